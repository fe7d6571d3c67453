#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "compsem/compose.hpp"
#include "compsem/config.hpp"
#include "compsem/eval.hpp"
#include "compsem/lexicon.hpp"
#include "compsem/reduce.hpp"
#include "compsem/space.hpp"
#include "compsem/synth.hpp"
#include "compsem/tensor_io.hpp"
#include "compsem/train.hpp"

namespace {

using namespace compsem;

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kInvalid = 2;

void warn_to_stderr(const std::string& message) {
  std::cerr << "warning: " << message << '\n';
}

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "pipeline config file");
  cmd->add_option("--seed", flags.seed, "override the config seed");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--set", flags.sets, "override a config key (key=value)");
}

PipelineConfig resolve_config(const CommonFlags& flags) {
  PipelineConfig config;
  if (!flags.config_path.empty())
    config = PipelineConfig::from_file(flags.config_path);
  for (const std::string& kv : flags.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw ValueError("--set expects key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.out) config.out = *flags.out;
  config.validate();
  return config;
}

NmfOptions nmf_options(const PipelineConfig& config) {
  NmfOptions opts;
  opts.max_outer = config.nmf_max_outer;
  opts.tolerance = config.nmf_tolerance;
  opts.inner_max = config.nmf_inner_max;
  opts.armijo = config.nmf_armijo;
  opts.step_shrink = config.nmf_step_shrink;
  opts.seed = config.seed;
  return opts;
}

// ---------------------------------------------------------------- build-space

int cmd_build_space(const PipelineConfig& config) {
  if (config.corpus.empty()) throw ValueError("build-space needs corpus=PATH");

  std::ifstream vocab_pass(config.corpus);
  if (!vocab_pass) throw IoError("cannot open corpus " + config.corpus.string());
  Vocabulary vocab = build_vocabulary(vocab_pass, config.max_targets,
                                      config.max_contexts, config.stoplist_size);
  if (vocab.targets.empty()) {
    std::cerr << "error: empty corpus\n";
    return kInvalid;
  }

  std::ifstream count_pass(config.corpus);
  SparseMatrix counts = count_cooccurrences(count_pass, vocab, warn_to_stderr);

  if (!config.triples.empty()) {
    const std::vector<TripleRecord> triples = load_triples(config.triples);

    // Phrases are collected for triples whose verb has a target row and
    // whose arguments are word targets.
    std::vector<PhraseSpec> specs;
    std::set<std::string> seen;
    for (const TripleRecord& t : triples) {
      if (vocab.target_id(t.verb) < 0) continue;
      if (vocab.target_id(t.subject) < 0) continue;
      if (t.transitive() && vocab.target_id(t.object) < 0) continue;
      PhraseSpec spec = PhraseSpec::from_triple(t);
      if (seen.insert(spec.token()).second) specs.push_back(std::move(spec));
    }

    std::vector<PhraseOccurrence> occurrences;
    std::ifstream phrase_pass(config.corpus);
    for_each_triple_occurrence(
        phrase_pass, triples,
        [&](const PhraseOccurrence& occ) { occurrences.push_back(occ); });
    SparseMatrix phrase_counts =
        count_phrase_occurrences(occurrences, specs, vocab, warn_to_stderr);
    counts.resize(phrase_counts.rows(), counts.cols());
    counts.merge(phrase_counts);
  }

  const SparseMatrix weighted =
      config.weighting == "pmi" ? weight_pmi(counts) : weight_lmi(counts);

  std::filesystem::create_directories(config.out);
  vocab.save(config.out);
  counts.save_tsv(config.out / "counts.tsv", vocab);
  weighted.save_tsv(config.out / "weighted.tsv", vocab);

  std::cout << "targets\t" << vocab.targets.size() << '\n'
            << "word_targets\t" << vocab.word_target_count << '\n'
            << "contexts\t" << vocab.contexts.size() << '\n'
            << "counts_nnz\t" << counts.nonzeros() << '\n'
            << "weighted_nnz\t" << weighted.nonzeros() << '\n';
  return kOk;
}

// --------------------------------------------------------------------- reduce

int cmd_reduce(const PipelineConfig& config) {
  const Vocabulary vocab = Vocabulary::load(config.out);
  const SparseMatrix weighted =
      SparseMatrix::load_tsv(config.out / "weighted.tsv", vocab);
  if (config.reduction == "none") {
    std::cout << "reduction=none, raw space is used directly\n";
    return kOk;
  }

  if (config.reduction == "nmf") {
    for (const auto& t : weighted.sorted_triplets()) {
      if (t.value < 0.0) {
        throw ValueError("nmf needs a non-negative matrix; cell (" +
                         vocab.targets[t.row] + ", " + vocab.contexts[t.col] +
                         ") is negative");
      }
    }
  }

  const long words = static_cast<long>(vocab.word_target_count);
  Eigen::MatrixXd core(words, weighted.cols());
  for (long r = 0; r < words; ++r) core.row(r) = weighted.dense_row(r);
  std::vector<std::string> names(vocab.targets.begin(),
                                 vocab.targets.begin() + words);

  ReducedSpace space;
  if (config.reduction == "svd") {
    space = svd_reduce(core, std::move(names), config.k);
  } else {
    NmfReduction nmf = nmf_reduce(core, std::move(names), config.k,
                                  nmf_options(config));
    if (!nmf.converged) {
      std::cerr << "warning: nmf did not converge in " << config.nmf_max_outer
                << " outer iterations (objective "
                << nmf.objectives.back() / nmf.input_squared_norm
                << " relative)\n";
    }
    space = std::move(nmf.space);
  }

  // Phrase rows never enter the decomposition; they are projected onto the
  // word-derived dimensions.
  for (std::size_t i = vocab.word_target_count; i < vocab.targets.size(); ++i) {
    const Eigen::VectorXd raw = weighted.dense_row(static_cast<long>(i));
    space.append(vocab.targets[i], project(space, raw, nmf_options(config)));
  }

  const auto dir = config.out / ("space." + config.reduction);
  space.save(dir);
  std::cout << "space\t" << config.reduction << '\n'
            << "k\t" << config.k << '\n'
            << "rows\t" << space.targets.size() << '\n'
            << "dir\t" << dir.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------- train

Lexicon load_space_lexicon(const PipelineConfig& config,
                           const std::string& space_name,
                           const Vocabulary& vocab,
                           const SparseMatrix& weighted) {
  if (space_name == "raw") return Lexicon::from_sparse(weighted, vocab);
  return Lexicon::from_reduced(
      ReducedSpace::load(config.out / ("space." + space_name)));
}

int cmd_train(const PipelineConfig& config, const std::string& space_name,
              const std::vector<std::string>& only_verbs,
              const std::string& world_dir) {
  TrainOptions opts;
  opts.lambda_grid = config.lambda_grid;
  opts.min_examples = config.min_examples;

  long trained = 0, attempted = 0;

  if (!world_dir.empty()) {
    // Fixture mode: train directly on planted-world observations.
    const PlantedWorld world = load_world(world_dir);
    std::unordered_map<std::string, Eigen::VectorXd> vectors;
    for (std::size_t i = 0; i < world.nouns.size(); ++i)
      vectors.emplace(world.nouns[i], world.noun_vectors.row(i));
    const auto model_dir = config.out / "models.world";

    for (const auto& [verb, planted] : world.verbs) {
      if (!only_verbs.empty() &&
          std::find(only_verbs.begin(), only_verbs.end(), verb) ==
              only_verbs.end())
        continue;
      ++attempted;
      const auto obs_path = std::filesystem::path(world_dir) /
                            ("observations." + verb + ".tsv");
      try {
        const std::vector<Observation> observations =
            load_observations(obs_path);
        NaryTraining result = train_nary(verb, planted.arity, observations,
                                         vectors, opts, warn_to_stderr);
        result.model.save(model_dir);
        const RecoveryError err = recovery_error(result.model, world, verb);
        std::cout << "verb\t" << verb << "\tarity\t" << planted.arity
                  << "\texamples\t" << observations.size() << "\tmax_abs_err\t"
                  << format_double(err.max_abs) << "\trel_frob_err\t"
                  << format_double(err.rel_frobenius) << '\n';
        ++trained;
      } catch (const InsufficientDataError& e) {
        std::cerr << "skip: " << verb << ": " << e.what() << '\n';
      } catch (const Error& e) {
        std::cerr << "fail: " << verb << ": " << e.what() << '\n';
      }
    }
    return trained == 0 && attempted > 0 ? kPartial : kOk;
  }

  const Vocabulary vocab = Vocabulary::load(config.out);
  const SparseMatrix weighted =
      SparseMatrix::load_tsv(config.out / "weighted.tsv", vocab);
  const Lexicon lex = load_space_lexicon(config, space_name, vocab, weighted);
  const std::vector<TripleRecord> triples = load_triples(config.triples);
  const std::vector<long> raw_nonzeros = weighted.row_nonzeros();

  auto usable = [&](const std::string& token) {
    const long id = vocab.target_id(token);
    return id >= 0 && raw_nonzeros[id] >= config.min_nonzero_dims &&
           lex.has(token) && lex.vector(token).norm() > 0.0;
  };

  // Distinct phrases per verb and arity, in sorted order.
  std::map<std::string, std::set<std::pair<std::string, std::string>>> sv;
  std::map<std::string,
           std::set<std::tuple<std::string, std::string, std::string>>>
      svo;
  for (const TripleRecord& t : triples) {
    if (t.transitive())
      svo[t.verb].insert({t.subject, t.verb, t.object});
    else
      sv[t.verb].insert({t.subject, t.verb});
  }

  std::set<std::string> verbs;
  if (only_verbs.empty()) {
    for (const auto& [v, _] : sv) verbs.insert(v);
    for (const auto& [v, _] : svo) verbs.insert(v);
  } else {
    verbs.insert(only_verbs.begin(), only_verbs.end());
  }

  const auto model_dir = config.out / ("models." + space_name);
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  auto normalized = [&](const std::string& token) {
    return Eigen::VectorXd(lex.vector(token).normalized());
  };

  for (const std::string& verb : verbs) {
    // Intransitive: (subject) -> subject_verb phrase vector.
    if (auto it = sv.find(verb); it != sv.end()) {
      ++attempted;
      std::vector<Observation> observations;
      for (const auto& [subject, _] : it->second) {
        PhraseSpec spec;
        spec.kind = PhraseSpec::Kind::SubjectVerb;
        spec.subject = subject;
        spec.verb = verb;
        if (!usable(subject) || !usable(spec.token())) continue;
        vectors.insert_or_assign(subject, normalized(subject));
        observations.push_back({{subject}, normalized(spec.token())});
      }
      try {
        NaryTraining result =
            train_nary(verb, 1, observations, vectors, opts, warn_to_stderr);
        result.model.save(model_dir);
        std::cout << "verb\t" << verb << "\tarity\t1\texamples\t"
                  << result.model.stages[0].examples << "\tlambda\t"
                  << format_double(result.model.stages[0].lambda_median)
                  << '\n';
        ++trained;
      } catch (const InsufficientDataError& e) {
        std::cerr << "skip: " << verb << "/1: " << e.what() << '\n';
      } catch (const StageError& e) {
        std::cerr << "skip: " << verb << "/1: " << e.what() << '\n';
      } catch (const Error& e) {
        std::cerr << "fail: " << verb << "/1: " << e.what() << '\n';
      }
    }
    // Transitive: (object, subject) -> subject_verb_object phrase vector.
    if (auto it = svo.find(verb); it != svo.end()) {
      ++attempted;
      std::vector<Observation> observations;
      for (const auto& [subject, _, object] : it->second) {
        PhraseSpec spec;
        spec.kind = PhraseSpec::Kind::SubjectVerbObject;
        spec.subject = subject;
        spec.verb = verb;
        spec.object = object;
        if (!usable(subject) || !usable(object) || !usable(spec.token()))
          continue;
        vectors.insert_or_assign(subject, normalized(subject));
        vectors.insert_or_assign(object, normalized(object));
        observations.push_back({{object, subject}, normalized(spec.token())});
      }
      try {
        NaryTraining result =
            train_nary(verb, 2, observations, vectors, opts, warn_to_stderr);
        result.model.save(model_dir);
        std::cout << "verb\t" << verb << "\tarity\t2\texamples\t"
                  << result.model.stages[1].examples << "\tvp_matrices\t"
                  << result.model.stages[1].regressions << "\tlambda\t"
                  << format_double(result.model.stages[0].lambda_median)
                  << '\n';
        ++trained;
      } catch (const InsufficientDataError& e) {
        std::cerr << "skip: " << verb << "/2: " << e.what() << '\n';
      } catch (const StageError& e) {
        std::cerr << "skip: " << verb << "/2: " << e.what() << '\n';
      } catch (const Error& e) {
        std::cerr << "fail: " << verb << "/2: " << e.what() << '\n';
      }
    }
  }
  if (attempted == 0) {
    std::cerr << "error: no verbs to train\n";
    return kInvalid;
  }
  return trained == 0 ? kPartial : kOk;
}

// -------------------------------------------------------------------- compose

int cmd_compose(const PipelineConfig& config, const std::string& space_name,
                const std::string& method_name_arg,
                const std::vector<std::string>& sentences) {
  const Vocabulary vocab = Vocabulary::load(config.out);
  const SparseMatrix weighted =
      SparseMatrix::load_tsv(config.out / "weighted.tsv", vocab);
  const Lexicon lex = load_space_lexicon(config, space_name, vocab, weighted);
  const Method method = parse_method(method_name_arg);

  std::optional<ModelSet> models;
  if (method == Method::Regression) {
    models = ModelSet::load(config.out / ("models." + space_name));
  }

  std::vector<SentenceRep> reps;
  for (const std::string& sentence : sentences) {
    const std::vector<std::string> tokens = split_tokens(sentence);
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw ValueError("sentence must be 'subject verb' or "
                       "'subject verb object', got '" +
                       sentence + "'");
    }
    SentenceInput input{tokens[0], tokens[1],
                        tokens.size() == 3 ? tokens[2] : ""};
    const TrainedModel* model = nullptr;
    if (method == Method::Regression) {
      model = models->find(input.verb, input.transitive() ? 2 : 1);
      if (!model) {
        throw ValueError("no trained model for '" + input.verb + "' at arity " +
                         std::to_string(input.transitive() ? 2 : 1));
      }
    }
    SentenceRep rep = compose(method, input, lex, model);
    if (rep.negative_inputs) {
      std::cerr << "warning: multiplicative composition over vectors with "
                   "negative components\n";
    }
    std::cout << "# " << sentence << '\n';
    save_tensor_text(std::cout, rep.value);
    reps.push_back(std::move(rep));
  }
  if (reps.size() == 2) {
    std::cout << "similarity\t" << format_double(similarity(reps[0], reps[1]))
              << '\n';
  }
  return kOk;
}

// ------------------------------------------------------------------- evaluate

int cmd_evaluate(const PipelineConfig& config, const std::string& space_name,
                 std::vector<std::string> methods,
                 const std::string& dataset_path) {
  const std::filesystem::path dataset_file =
      dataset_path.empty() ? config.dataset : std::filesystem::path(dataset_path);
  if (dataset_file.empty()) throw ValueError("evaluate needs a dataset");
  const std::vector<Judgment> judgments = load_dataset(dataset_file);

  const Vocabulary vocab = Vocabulary::load(config.out);
  const SparseMatrix weighted =
      SparseMatrix::load_tsv(config.out / "weighted.tsv", vocab);
  const Lexicon lex = load_space_lexicon(config, space_name, vocab, weighted);

  const bool negative_space = lex.any_negative();
  const bool methods_requested = !methods.empty();
  if (methods.empty()) {
    methods = {"verb", "add", "multiply", "kronecker", "regression"};
    if (negative_space) {
      // Multiplicative methods are only reported for non-negative spaces
      // unless explicitly requested.
      std::erase(methods, "multiply");
      std::erase(methods, "kronecker");
    }
  }

  const bool any_transitive =
      std::any_of(judgments.begin(), judgments.end(),
                  [](const Judgment& j) { return j.transitive(); });

  std::optional<ModelSet> models;
  std::vector<EvalReport> reports;
  for (const std::string& name : methods) {
    const Method method = parse_method(name);
    if (method == Method::Kronecker && !any_transitive) {
      EvalReport note;
      note.method = name;
      note.space = space_name;
      note.rho = std::numeric_limits<double>::quiet_NaN();
      note.rho_pairmeans = note.rho;
      note.note = "reduces to multiply on intransitive sentences";
      reports.push_back(std::move(note));
      continue;
    }
    if (method == Method::Regression && !models) {
      models = ModelSet::load(config.out / ("models." + space_name));
    }
    EvalReport report = evaluate(method, lex,
                                 models ? &*models : nullptr, judgments,
                                 space_name);
    if (methods_requested && negative_space &&
        (method == Method::Multiply || method == Method::Kronecker)) {
      report.negative_warning = true;
    }
    reports.push_back(std::move(report));
  }

  double human_rho = 0.0;
  bool has_human = false;
  try {
    human_rho = human_ceiling(judgments);
    has_human = true;
  } catch (const Error&) {
  }

  std::filesystem::create_directories(config.out);
  const std::string json = report_json(reports, human_rho, has_human);
  const std::string table = report_table(reports, human_rho, has_human);
  {
    std::ofstream out(config.out / ("report." + space_name + ".json"));
    out << json;
  }
  {
    std::ofstream out(config.out / ("report." + space_name + ".txt"));
    out << table;
  }
  std::cout << table;
  return kOk;
}

// ---------------------------------------------------------------------- synth

int cmd_synth_world(const PipelineConfig& config, long k, long nouns,
                    double sigma, const std::string& verbs_arg,
                    long observations) {
  std::vector<std::pair<std::string, int>> verbs;
  std::istringstream in(verbs_arg);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw ValueError("--verbs expects name:arity pairs, got '" + item + "'");
    }
    verbs.emplace_back(item.substr(0, colon),
                       std::stoi(item.substr(colon + 1)));
  }
  const PlantedWorld world = gen_world(config.seed, k, nouns, verbs, sigma);
  save_world(config.out, world);
  for (const auto& [name, verb] : world.verbs) {
    long distinct = 1;
    for (int i = 0; i < verb.arity; ++i) distinct *= nouns;
    const long n = std::min(observations, distinct);
    if (n < observations) {
      std::cerr << "note: " << name << " has only " << distinct
                << " distinct argument tuples\n";
    }
    const auto obs = gen_observations(world, name, n);
    save_observations(config.out / ("observations." + name + ".tsv"), obs);
  }
  std::cout << "world\t" << config.out.string() << "\nnouns\t" << nouns
            << "\nverbs\t" << world.verbs.size() << "\nobservations\t"
            << observations << '\n';
  return kOk;
}

int cmd_synth_corpus(const PipelineConfig& config, long sentences, long nouns,
                     long iverbs, long tverbs, long contexts,
                     long participants) {
  CorpusParams params;
  params.seed = config.seed;
  params.sentences = sentences;
  params.nouns = nouns;
  params.intransitive_verbs = iverbs;
  params.transitive_verbs = tverbs;
  params.contexts = contexts;
  params.participants = participants;
  const SyntheticCorpus corpus = gen_corpus(params);
  save_corpus(config.out, corpus);
  std::cout << "corpus\t" << (config.out / "corpus.txt").string()
            << "\nsentences\t" << corpus.sentences.size() << "\njudgments\t"
            << corpus.judgments.size() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compositional distributional semantics toolkit"};
  app.require_subcommand(1);

  CommonFlags build_flags, reduce_flags, train_flags, compose_flags,
      eval_flags, world_flags, corpus_flags;

  auto* build = app.add_subcommand("build-space",
                                   "count co-occurrences and weight them");
  add_common(build, build_flags);
  std::string build_corpus, build_triples;
  build->add_option("--corpus", build_corpus, "corpus file (one sentence per line)");
  build->add_option("--triples", build_triples, "dependency triples TSV");

  auto* reduce = app.add_subcommand("reduce", "reduce the space to k dimensions");
  add_common(reduce, reduce_flags);
  std::string reduce_method;
  long reduce_k = 0;
  reduce->add_option("--method", reduce_method, "svd | nmf | none");
  reduce->add_option("-k,--k", reduce_k, "target dimensionality");

  auto* train = app.add_subcommand("train", "learn verb matrices and tensors");
  add_common(train, train_flags);
  std::string train_space = "svd", train_world;
  std::vector<std::string> train_verbs;
  train->add_option("--space", train_space, "raw | svd | nmf");
  train->add_option("--verbs", train_verbs, "verbs to train (default: all)")
      ->delimiter(',');
  train->add_option("--world", train_world, "planted-world fixture directory");

  auto* compose_cmd = app.add_subcommand("compose", "compose sentence vectors");
  add_common(compose_cmd, compose_flags);
  std::string compose_space = "svd", compose_method = "multiply";
  std::vector<std::string> compose_sentences;
  compose_cmd->add_option("--space", compose_space, "raw | svd | nmf");
  compose_cmd->add_option("--method", compose_method,
                          "verb | add | multiply | kronecker | regression");
  compose_cmd
      ->add_option("--sentence", compose_sentences,
                   "'subject verb [object]' (repeatable; two sentences also "
                   "print their similarity)")
      ->required();

  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "score methods against human judgments");
  add_common(evaluate_cmd, eval_flags);
  std::string eval_space = "svd", eval_dataset;
  std::vector<std::string> eval_methods;
  evaluate_cmd->add_option("--space", eval_space, "raw | svd | nmf");
  evaluate_cmd->add_option("--methods", eval_methods,
                           "comma list; default: all applicable")
      ->delimiter(',');
  evaluate_cmd->add_option("--dataset", eval_dataset, "judgments TSV");

  auto* synth = app.add_subcommand("synth", "generate planted fixtures");
  synth->require_subcommand(1);
  auto* world = synth->add_subcommand("world", "planted tensors plus observations");
  add_common(world, world_flags);
  long world_k = 5, world_nouns = 20, world_obs = 50;
  double world_sigma = 0.0;
  std::string world_verbs = "v0:1,v1:2";
  world->add_option("-k,--k", world_k, "vector dimensionality");
  world->add_option("--nouns", world_nouns, "lexicon size");
  world->add_option("--sigma", world_sigma, "observation noise");
  world->add_option("--verbs", world_verbs, "name:arity pairs, comma separated");
  world->add_option("--observations", world_obs, "observations per verb");

  auto* corpus = synth->add_subcommand("corpus", "miniature corpus with judgments");
  add_common(corpus, corpus_flags);
  long corpus_sentences = 200, corpus_nouns = 10, corpus_iverbs = 3,
       corpus_tverbs = 3, corpus_contexts = 24, corpus_participants = 3;
  corpus->add_option("--sentences", corpus_sentences, "number of sentences");
  corpus->add_option("--nouns", corpus_nouns, "noun inventory");
  corpus->add_option("--intransitive-verbs", corpus_iverbs, "intransitive verbs");
  corpus->add_option("--transitive-verbs", corpus_tverbs, "transitive verbs");
  corpus->add_option("--contexts", corpus_contexts, "context token inventory");
  corpus->add_option("--participants", corpus_participants, "judgment raters");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      PipelineConfig config = resolve_config(build_flags);
      if (!build_corpus.empty()) config.corpus = build_corpus;
      if (!build_triples.empty()) config.triples = build_triples;
      return cmd_build_space(config);
    }
    if (*reduce) {
      PipelineConfig config = resolve_config(reduce_flags);
      if (!reduce_method.empty()) config.reduction = reduce_method;
      if (reduce_k > 0) config.k = reduce_k;
      config.validate();
      return cmd_reduce(config);
    }
    if (*train) {
      return cmd_train(resolve_config(train_flags), train_space, train_verbs,
                       train_world);
    }
    if (*compose_cmd) {
      return cmd_compose(resolve_config(compose_flags), compose_space,
                         compose_method, compose_sentences);
    }
    if (*evaluate_cmd) {
      return cmd_evaluate(resolve_config(eval_flags), eval_space, eval_methods,
                          eval_dataset);
    }
    if (*world) {
      return cmd_synth_world(resolve_config(world_flags), world_k, world_nouns,
                             world_sigma, world_verbs, world_obs);
    }
    if (*corpus) {
      return cmd_synth_corpus(resolve_config(corpus_flags), corpus_sentences,
                              corpus_nouns, corpus_iverbs, corpus_tverbs,
                              corpus_contexts, corpus_participants);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
