#ifndef COMPSEM_EVAL_HPP
#define COMPSEM_EVAL_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "compsem/compose.hpp"

namespace compsem {

// One human rating of a sentence pair: (subject verb object?) against the
// same sentence with the landmark verb substituted, on a 1-7 scale.
struct Judgment {
  std::string participant;
  std::string subject;
  std::string verb;
  std::string object;  // empty for intransitives
  std::string landmark;
  double rating = 0.0;

  bool transitive() const { return !object.empty(); }
  bool operator==(const Judgment&) const = default;
};

// Dataset TSV: header `participant subject verb object landmark rating`,
// tab-separated, `-` for missing object.
std::vector<Judgment> load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path,
                  const std::vector<Judgment>& judgments);

// Tie-aware Spearman: Pearson correlation of average-ranked values.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

struct PairKey {
  std::string subject, verb, object, landmark;
  auto operator<=>(const PairKey&) const = default;
  std::string str() const;
};

struct PairScore {
  PairKey pair;
  double model_similarity = 0.0;
  double mean_rating = 0.0;
  long ratings = 0;
};

struct SkippedPair {
  PairKey pair;
  std::string reason;
  long ratings = 0;  // judgments excluded with this pair
};

struct EvalReport {
  std::string method;
  std::string space;
  double rho = 0.0;
  double rho_pairmeans = 0.0;  // secondary diagnostic over per-pair means
  long n = 0;
  std::vector<PairScore> pairs;
  std::vector<SkippedPair> skipped;
  bool invalid = false;  // more than half of the judgments were skipped
  bool negative_warning = false;
  std::string note;
};

// Scores every judgment pair with the method and correlates the pooled
// individual ratings with the model similarities.  Pairs with
// out-of-vocabulary items or missing models are skipped and recorded.
EvalReport evaluate(Method method, const Lexicon& lex, const ModelSet* models,
                    const std::vector<Judgment>& judgments,
                    const std::string& space_name);

// Inter-annotator agreement: the mean over participants of the Spearman
// correlation between their ratings and the mean rating of everyone else
// on the same pairs.
double human_ceiling(const std::vector<Judgment>& judgments);

std::string report_json(const std::vector<EvalReport>& reports,
                        double human_rho, bool has_human_rho);
std::string report_table(const std::vector<EvalReport>& reports,
                         double human_rho, bool has_human_rho);

}  // namespace compsem

#endif
