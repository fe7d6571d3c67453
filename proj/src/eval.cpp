#include "compsem/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "compsem/tensor_io.hpp"

#include "json.hpp"

namespace compsem {

namespace {

constexpr const char* kHeader =
    "participant\tsubject\tverb\tobject\tlandmark\trating";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, '\t')) fields.push_back(field);
  return fields;
}

}  // namespace

std::vector<Judgment> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty dataset");
  if (line != kHeader) {
    throw IoError(path.string() + ": unexpected header '" + line +
                  "', expected '" + kHeader + "'");
  }
  std::vector<Judgment> judgments;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_tabs(line);
    if (f.size() != 6) {
      throw IoError(path.string() + ": row " + std::to_string(row) +
                    " has " + std::to_string(f.size()) + " columns, expected 6");
    }
    Judgment j;
    j.participant = f[0];
    j.subject = f[1];
    j.verb = f[2];
    j.object = f[3] == "-" ? "" : f[3];
    j.landmark = f[4];
    try {
      j.rating = std::stod(f[5]);
    } catch (const std::exception&) {
      throw IoError(path.string() + ": row " + std::to_string(row) +
                    ": bad rating '" + f[5] + "'");
    }
    if (j.rating < 1.0 || j.rating > 7.0) {
      throw ValueError(path.string() + ": row " + std::to_string(row) +
                       ": rating " + f[5] + " outside [1, 7]");
    }
    judgments.push_back(std::move(j));
  }
  return judgments;
}

void save_dataset(const std::filesystem::path& path,
                  const std::vector<Judgment>& judgments) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kHeader << '\n';
  for (const Judgment& j : judgments) {
    out << j.participant << '\t' << j.subject << '\t' << j.verb << '\t'
        << (j.object.empty() ? "-" : j.object) << '\t' << j.landmark << '\t'
        << format_double(j.rating) << '\n';
  }
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ValueError("correlation is undefined for constant input");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw ShapeError("spearman: length mismatch " + std::to_string(xs.size()) +
                     " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 2) throw ValueError("spearman needs at least 2 points");
  return pearson(average_ranks(xs), average_ranks(ys));
}

std::string PairKey::str() const {
  return subject + " " + verb + (object.empty() ? "" : " " + object) + " | " +
         landmark;
}

EvalReport evaluate(Method method, const Lexicon& lex, const ModelSet* models,
                    const std::vector<Judgment>& judgments,
                    const std::string& space_name) {
  EvalReport report;
  report.method = method_name(method);
  report.space = space_name;

  // Pair-level scores, computed once per distinct pair.
  std::map<PairKey, double> similarities;
  std::map<PairKey, std::string> failures;
  std::map<PairKey, std::pair<double, long>> rating_sums;
  std::vector<PairKey> order;

  for (const Judgment& j : judgments) {
    const PairKey key{j.subject, j.verb, j.object, j.landmark};
    auto& sum = rating_sums[key];
    if (sum.second == 0) order.push_back(key);
    sum.first += j.rating;
    sum.second += 1;
    if (similarities.count(key) || failures.count(key)) continue;

    const SentenceInput first{j.subject, j.verb, j.object};
    const SentenceInput second = first.with_verb(j.landmark);
    try {
      const TrainedModel* m1 = nullptr;
      const TrainedModel* m2 = nullptr;
      if (method == Method::Regression) {
        const int arity = j.transitive() ? 2 : 1;
        if (!models || !(m1 = models->find(j.verb, arity))) {
          throw OovError(j.verb + " (no arity-" + std::to_string(arity) +
                         " model)");
        }
        if (!(m2 = models->find(j.landmark, arity))) {
          throw OovError(j.landmark + " (no arity-" + std::to_string(arity) +
                         " model)");
        }
      }
      const SentenceRep a = compose(method, first, lex, m1);
      const SentenceRep b = compose(method, second, lex, m2);
      report.negative_warning |= a.negative_inputs || b.negative_inputs;
      similarities.emplace(key, similarity(a, b));
    } catch (const OovError& e) {
      failures.emplace(key, std::string("oov: ") + e.lemma);
    } catch (const ValueError& e) {
      failures.emplace(key, e.what());
    }
  }

  // Pooled individual ratings against the pair's model similarity.
  std::vector<double> ratings, sims;
  for (const Judgment& j : judgments) {
    const PairKey key{j.subject, j.verb, j.object, j.landmark};
    auto it = similarities.find(key);
    if (it == similarities.end()) continue;
    ratings.push_back(j.rating);
    sims.push_back(it->second);
  }
  report.n = static_cast<long>(ratings.size());

  long skipped_ratings = 0;
  std::vector<double> pair_means, pair_sims;
  for (const PairKey& key : order) {
    const auto& [sum, count] = rating_sums[key];
    auto hit = similarities.find(key);
    if (hit != similarities.end()) {
      report.pairs.push_back({key, hit->second, sum / count, count});
      pair_means.push_back(sum / count);
      pair_sims.push_back(hit->second);
    } else {
      report.skipped.push_back({key, failures[key], count});
      skipped_ratings += count;
    }
  }

  if (2 * skipped_ratings > static_cast<long>(judgments.size())) {
    report.invalid = true;
    report.note = "more than half of the judgments were skipped";
  }
  try {
    report.rho = spearman(ratings, sims);
  } catch (const Error& e) {
    report.invalid = true;
    report.rho = std::numeric_limits<double>::quiet_NaN();
    if (report.note.empty()) report.note = e.what();
  }
  // secondary diagnostic; its failure does not invalidate the report
  try {
    report.rho_pairmeans = spearman(pair_means, pair_sims);
  } catch (const Error&) {
    report.rho_pairmeans = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

double human_ceiling(const std::vector<Judgment>& judgments) {
  // participant -> pair -> (rating sum, count)
  std::map<std::string, std::map<PairKey, std::pair<double, long>>> by_person;
  for (const Judgment& j : judgments) {
    auto& cell =
        by_person[j.participant][{j.subject, j.verb, j.object, j.landmark}];
    cell.first += j.rating;
    cell.second += 1;
  }
  if (by_person.size() < 2) {
    throw ValueError("human ceiling needs at least 2 participants");
  }

  std::vector<double> correlations;
  for (const auto& [person, rated] : by_person) {
    std::vector<double> own, others;
    for (const auto& [pair, cell] : rated) {
      double sum = 0.0;
      long count = 0;
      for (const auto& [other, other_rated] : by_person) {
        if (other == person) continue;
        auto it = other_rated.find(pair);
        if (it == other_rated.end()) continue;
        sum += it->second.first;
        count += it->second.second;
      }
      if (count == 0) continue;
      own.push_back(cell.first / cell.second);
      others.push_back(sum / count);
    }
    try {
      correlations.push_back(spearman(own, others));
    } catch (const Error&) {
      // rated too few shared pairs or gave constant ratings
    }
  }
  if (correlations.empty()) {
    throw ValueError("human ceiling undefined: no participant overlaps");
  }
  return std::accumulate(correlations.begin(), correlations.end(), 0.0) /
         static_cast<double>(correlations.size());
}

namespace {

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["space"] = r.space;
  if (std::isnan(r.rho)) {
    j["rho"] = nullptr;
    j["rho_pairmeans"] = nullptr;
  } else {
    j["rho"] = r.rho;
    j["rho_pairmeans"] = r.rho_pairmeans;
  }
  j["n"] = r.n;
  j["invalid"] = r.invalid;
  j["negative_warning"] = r.negative_warning;
  if (!r.note.empty()) j["note"] = r.note;
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  for (const SkippedPair& s : r.skipped) {
    skipped.push_back({{"pair", s.pair.str()},
                       {"reason", s.reason},
                       {"ratings", s.ratings}});
  }
  j["skipped"] = std::move(skipped);
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const PairScore& p : r.pairs) {
    pairs.push_back({{"pair", p.pair.str()},
                     {"similarity", p.model_similarity},
                     {"mean_rating", p.mean_rating},
                     {"ratings", p.ratings}});
  }
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace

std::string report_json(const std::vector<EvalReport>& reports,
                        double human_rho, bool has_human_rho) {
  nlohmann::ordered_json j;
  if (has_human_rho) j["humans"] = human_rho;
  j["reports"] = nlohmann::ordered_json::array();
  for (const EvalReport& r : reports) j["reports"].push_back(report_to_json(r));
  return j.dump(2) + "\n";
}

std::string report_table(const std::vector<EvalReport>& reports,
                         double human_rho, bool has_human_rho) {
  std::ostringstream out;
  char buf[80];
  out << "method                    rho  rho_pm      n\n";
  out << "---------------------------------------------\n";
  if (has_human_rho) {
    std::snprintf(buf, sizeof buf, "%-22s %7.4f\n", "humans", human_rho);
    out << buf;
    out << "---------------------------------------------\n";
  }
  for (const EvalReport& r : reports) {
    const std::string name = r.method + "." + r.space;
    if (std::isnan(r.rho)) {
      std::snprintf(buf, sizeof buf, "%-22s %7s %7s %6ld", name.c_str(), "n/a",
                    "n/a", r.n);
    } else {
      std::snprintf(buf, sizeof buf, "%-22s %7.4f %7.4f %6ld", name.c_str(),
                    r.rho, r.rho_pairmeans, r.n);
    }
    out << buf;
    if (r.invalid) out << "  [invalid]";
    if (r.negative_warning) out << "  [negative values]";
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace compsem
