#include "compsem/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "compsem/rng.hpp"
#include "compsem/tensor_io.hpp"

#include "json.hpp"

namespace compsem {

namespace {

std::string padded_name(const std::string& prefix, long i, int width) {
  std::string digits = std::to_string(i);
  while (static_cast<int>(digits.size()) < width) digits.insert(0, "0");
  return prefix + digits;
}

}  // namespace

Eigen::VectorXd PlantedWorld::noun_vector(const std::string& noun) const {
  for (std::size_t i = 0; i < nouns.size(); ++i) {
    if (nouns[i] == noun) return noun_vectors.row(i);
  }
  throw OovError(noun);
}

Lexicon PlantedWorld::noun_lexicon() const {
  return Lexicon(nouns, noun_vectors);
}

PlantedWorld gen_world(std::uint64_t seed, Eigen::Index k, long n_nouns,
                       const std::vector<std::pair<std::string, int>>& verbs,
                       double sigma) {
  if (k < 2) throw ValueError("gen_world: k must be >= 2");
  if (sigma < 0.0) throw ValueError("gen_world: sigma must be >= 0");
  Rng rng(seed);

  PlantedWorld world;
  world.seed = seed;
  world.k = k;
  world.sigma = sigma;
  world.noun_vectors.resize(n_nouns, k);
  for (long i = 0; i < n_nouns; ++i) {
    world.nouns.push_back(padded_name("n", i, 2));
    for (Eigen::Index j = 0; j < k; ++j) world.noun_vectors(i, j) = rng.uniform();
  }
  for (const auto& [name, arity] : verbs) {
    if (arity < 1) throw ValueError("gen_world: verb arity must be >= 1");
    std::vector<Index> shape(arity + 1, k);
    Tensord tensor(shape);
    for (Index i = 0; i < tensor.size(); ++i)
      tensor[i] = rng.uniform(-1.0, 1.0);
    world.verbs.emplace(name, PlantedVerb{arity, std::move(tensor)});
  }
  return world;
}

Eigen::VectorXd sentence_vector(const PlantedWorld& world,
                                const std::string& verb,
                                const std::vector<std::string>& args) {
  auto it = world.verbs.find(verb);
  if (it == world.verbs.end()) throw OovError(verb);
  if (static_cast<int>(args.size()) != it->second.arity) {
    throw ShapeError("verb '" + verb + "' takes " +
                     std::to_string(it->second.arity) + " arguments, got " +
                     std::to_string(args.size()));
  }
  Tensord t = it->second.tensor;
  for (const std::string& arg : args) {
    t = contract(t, Tensord::from_vector(world.noun_vector(arg)));
  }
  return t.as_vector();
}

std::vector<Observation> gen_observations(const PlantedWorld& world,
                                          const std::string& verb, long n) {
  auto it = world.verbs.find(verb);
  if (it == world.verbs.end()) throw OovError(verb);
  const int arity = it->second.arity;
  const long lex = static_cast<long>(world.nouns.size());

  long total = 1;
  for (int i = 0; i < arity; ++i) {
    if (lex == 0 || total > (1L << 50) / std::max(lex, 1L)) {
      total = lex == 0 ? 0 : (1L << 50);
      break;
    }
    total *= lex;
  }
  if (n > total) {
    throw ValueError("gen_observations: " + std::to_string(n) +
                     " tuples requested but only " + std::to_string(total) +
                     " distinct tuples exist");
  }

  Rng rng(world.seed ^ stable_hash(verb));

  // Floyd's algorithm: n distinct flat tuple indices.
  std::unordered_set<long> chosen;
  std::vector<long> picks;
  picks.reserve(n);
  for (long j = total - n; j < total; ++j) {
    const long t = static_cast<long>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (chosen.count(t)) {
      chosen.insert(j);
      picks.push_back(j);
    } else {
      chosen.insert(t);
      picks.push_back(t);
    }
  }

  std::vector<Observation> observations;
  observations.reserve(n);
  for (long flat : picks) {
    std::vector<std::string> args(arity);
    long rest = flat;
    for (int i = arity - 1; i >= 0; --i) {
      args[i] = world.nouns[rest % lex];
      rest /= lex;
    }
    Eigen::VectorXd vec = sentence_vector(world, verb, args);
    if (world.sigma > 0.0) {
      for (Eigen::Index j = 0; j < vec.size(); ++j)
        vec(j) += world.sigma * rng.gaussian();
    }
    observations.push_back({std::move(args), std::move(vec)});
  }
  return observations;
}

RecoveryError recovery_error(const TrainedModel& learned,
                             const PlantedWorld& world,
                             const std::string& verb) {
  auto it = world.verbs.find(verb);
  if (it == world.verbs.end()) throw OovError(verb);
  const Tensord& truth = it->second.tensor;
  if (!learned.tensor.same_shape(truth)) {
    throw ShapeError("recovery_error: learned shape " +
                     learned.tensor.shape_str() + " vs planted " +
                     truth.shape_str());
  }
  RecoveryError err;
  err.max_abs = (learned.tensor.data() - truth.data()).cwiseAbs().maxCoeff();
  const double denom = truth.data().norm();
  err.rel_frobenius =
      denom == 0.0 ? 0.0 : (learned.tensor.data() - truth.data()).norm() / denom;
  return err;
}

void save_world(const std::filesystem::path& dir, const PlantedWorld& world) {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["algorithm"] = Rng::kAlgorithmId;
  meta["seed"] = world.seed;
  meta["k"] = world.k;
  meta["sigma"] = world.sigma;
  meta["nouns"] = world.nouns;
  nlohmann::ordered_json verbs = nlohmann::ordered_json::array();
  for (const auto& [name, verb] : world.verbs) {
    verbs.push_back({{"name", name}, {"arity", verb.arity}});
    save_tensor(dir / ("verb." + name + ".tensor"), verb.tensor);
  }
  meta["verbs"] = std::move(verbs);
  std::ofstream out(dir / "world.json");
  if (!out) throw IoError("cannot write " + (dir / "world.json").string());
  out << meta.dump(2) << '\n';
  if (world.nouns.size() > 0) {
    save_tensor(dir / "nouns.tensor", Tensord::from_matrix(world.noun_vectors));
  }
}

PlantedWorld load_world(const std::filesystem::path& dir) {
  std::ifstream in(dir / "world.json");
  if (!in) throw IoError("cannot open " + (dir / "world.json").string());
  nlohmann::json meta = nlohmann::json::parse(in);
  PlantedWorld world;
  world.seed = meta["seed"].get<std::uint64_t>();
  world.k = meta["k"].get<Eigen::Index>();
  world.sigma = meta["sigma"].get<double>();
  world.nouns = meta["nouns"].get<std::vector<std::string>>();
  if (!world.nouns.empty()) {
    world.noun_vectors = load_tensor(dir / "nouns.tensor").as_matrix();
  } else {
    world.noun_vectors.resize(0, world.k);
  }
  for (const auto& v : meta["verbs"]) {
    const std::string name = v["name"].get<std::string>();
    PlantedVerb verb;
    verb.arity = v["arity"].get<int>();
    verb.tensor = load_tensor(dir / ("verb." + name + ".tensor"));
    world.verbs.emplace(name, std::move(verb));
  }
  return world;
}

void save_observations(const std::filesystem::path& path,
                       const std::vector<Observation>& observations) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const Observation& obs : observations) {
    for (std::size_t i = 0; i < obs.args.size(); ++i) {
      if (i) out << ' ';
      out << obs.args[i];
    }
    out << '\t';
    for (Eigen::Index i = 0; i < obs.vector.size(); ++i) {
      if (i) out << ' ';
      out << format_double(obs.vector(i));
    }
    out << '\n';
  }
}

std::vector<Observation> load_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<Observation> observations;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path.string() + ": expected args<TAB>components");
    }
    Observation obs;
    obs.args = split_tokens(line.substr(0, tab));
    const std::vector<std::string> comps = split_tokens(line.substr(tab + 1));
    obs.vector.resize(static_cast<Eigen::Index>(comps.size()));
    for (std::size_t i = 0; i < comps.size(); ++i)
      obs.vector(static_cast<Eigen::Index>(i)) = std::stod(comps[i]);
    observations.push_back(std::move(obs));
  }
  return observations;
}

namespace {

std::vector<std::string> context_window(const std::vector<std::string>& all,
                                        long start, long length) {
  std::vector<std::string> window;
  for (long i = 0; i < length; ++i) {
    window.push_back(all[(start + i) % static_cast<long>(all.size())]);
  }
  return window;
}

double window_overlap(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  long shared = 0;
  for (const auto& t : a) {
    if (std::find(b.begin(), b.end(), t) != b.end()) ++shared;
  }
  return static_cast<double>(shared) / static_cast<double>(a.size());
}

}  // namespace

SyntheticCorpus gen_corpus(const CorpusParams& params) {
  Rng rng(params.seed);
  SyntheticCorpus corpus;

  std::vector<std::string> nouns, iverbs, tverbs, contexts;
  for (long i = 0; i < params.nouns; ++i) nouns.push_back(padded_name("noun", i, 2));
  for (long i = 0; i < params.intransitive_verbs; ++i)
    iverbs.push_back(padded_name("iverb", i, 1));
  for (long i = 0; i < params.transitive_verbs; ++i)
    tverbs.push_back(padded_name("tverb", i, 1));
  for (long i = 0; i < params.contexts; ++i)
    contexts.push_back(padded_name("ctx", i, 2));

  // Preferred-context windows give each token a topical profile; nearby
  // verbs overlap more, which grounds the synthetic similarity judgments.
  std::map<std::string, std::vector<std::string>> windows;
  long g = 0;
  for (const auto& v : iverbs) windows[v] = context_window(contexts, 3 * g++, 8);
  for (const auto& v : tverbs) windows[v] = context_window(contexts, 3 * g++, 8);
  for (long i = 0; i < params.nouns; ++i)
    windows[nouns[i]] = context_window(contexts, 2 * i + 1, 5);

  for (long s = 0; s < params.sentences; ++s) {
    const bool transitive = rng.uniform() < params.transitive_share;
    const std::string subject = nouns[rng.below(nouns.size())];
    const std::string verb = transitive ? tverbs[rng.below(tverbs.size())]
                                        : iverbs[rng.below(iverbs.size())];
    std::vector<std::string> tokens{subject, verb};
    TripleRecord triple;
    triple.sentence = static_cast<std::size_t>(s);
    triple.subject = subject;
    triple.verb = verb;
    if (transitive) {
      triple.object = nouns[rng.below(nouns.size())];
      tokens.push_back(triple.object);
    }
    const long extras = 3 + static_cast<long>(rng.below(4));
    for (long e = 0; e < extras; ++e) {
      const double u = rng.uniform();
      if (u < 0.5) {
        const auto& w = windows[verb];
        tokens.push_back(w[rng.below(w.size())]);
      } else if (u < 0.8) {
        const auto& w = windows[subject];
        tokens.push_back(w[rng.below(w.size())]);
      } else {
        tokens.push_back(contexts[rng.below(contexts.size())]);
      }
    }
    corpus.sentences.push_back(std::move(tokens));
    corpus.triples.push_back(std::move(triple));
  }

  // Judgments: every ordered same-transitivity verb pair under two argument
  // settings, rated by all participants with per-rating jitter.
  auto add_judgments = [&](const std::vector<std::string>& verbs, bool trans) {
    for (const auto& verb : verbs) {
      for (const auto& landmark : verbs) {
        if (verb == landmark) continue;
        const double overlap = window_overlap(windows[verb], windows[landmark]);
        for (int setting = 0; setting < 2; ++setting) {
          const std::string subject = nouns[rng.below(nouns.size())];
          const std::string object =
              trans ? nouns[rng.below(nouns.size())] : "";
          for (long p = 0; p < params.participants; ++p) {
            const double noisy =
                1.0 + 6.0 * overlap + (rng.uniform() - 0.5) * 2.0;
            Judgment j;
            j.participant = padded_name("p", p, 1);
            j.subject = subject;
            j.verb = verb;
            j.object = object;
            j.landmark = landmark;
            j.rating = std::clamp(std::round(noisy), 1.0, 7.0);
            corpus.judgments.push_back(std::move(j));
          }
        }
      }
    }
  };
  add_judgments(iverbs, false);
  add_judgments(tverbs, true);
  return corpus;
}

void save_corpus(const std::filesystem::path& dir,
                 const SyntheticCorpus& corpus) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "corpus.txt");
  if (!out) throw IoError("cannot write " + (dir / "corpus.txt").string());
  for (const auto& sentence : corpus.sentences) {
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i) out << ' ';
      out << sentence[i];
    }
    out << '\n';
  }
  save_triples(dir / "triples.tsv", corpus.triples);
  save_dataset(dir / "judgments.tsv", corpus.judgments);
}

}  // namespace compsem
