#ifndef COMPSEM_TRAIN_HPP
#define COMPSEM_TRAIN_HPP

#include <Eigen/Core>

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "compsem/regression.hpp"
#include "compsem/space.hpp"
#include "compsem/tensor.hpp"

namespace compsem {

struct TrainOptions {
  std::vector<double> lambda_grid = default_lambda_grid();
  long min_examples = 3;
};

// One regression stage of a trained model; index 0 is the final regression
// that produced the full tensor, higher indices the earlier (more
// saturated) stages.
struct StageInfo {
  long regressions = 0;
  long examples = 0;
  double lambda_median = 0.0;
};

// A learned verb function: rank arity+1 tensor with the output mode first
// and argument modes in reverse application order, so contracting with the
// object and then the subject yields the sentence vector.
struct TrainedModel {
  std::string lemma;
  int arity = 1;
  Tensord tensor;
  std::vector<StageInfo> stages;

  void save(const std::filesystem::path& dir) const;
  static TrainedModel load_named(const std::filesystem::path& dir,
                                 const std::string& lemma, int arity);
};

// Keyed collection of trained models, one per (lemma, arity).
struct ModelSet {
  std::map<std::pair<std::string, int>, TrainedModel> models;

  void add(TrainedModel m);
  const TrainedModel* find(const std::string& lemma, int arity) const;

  void save(const std::filesystem::path& dir) const;
  static ModelSet load(const std::filesystem::path& dir);
};

using VectorPairs = std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>;

// Learns the matrix mapping subject vectors to sentence vectors by ridge
// regression with GCV-selected lambda.  Pairs are used as given; the
// pipeline is responsible for any prior normalization.
TrainedModel train_intransitive(const std::string& verb,
                                const VectorPairs& pairs,
                                const TrainOptions& opts);

struct VpTriple {
  std::string object;
  Eigen::VectorXd subject;
  Eigen::VectorXd sentence;
};

struct VpMatrices {
  std::map<std::string, Tensord> matrices;  // object -> VP matrix
  std::map<std::string, double> lambdas;
  std::map<std::string, long> group_sizes;
};

// First step of two-step estimation: one matrix per object with enough
// training pairs; undersized groups are dropped.
VpMatrices train_vp_matrices(const std::string& verb,
                             const std::vector<VpTriple>& triples,
                             const TrainOptions& opts);

// Second step: regresses object vectors onto the unfolded VP matrices,
// producing the rank-3 verb tensor.  Objects without a vector are skipped
// with a warning.
TrainedModel train_transitive(
    const std::string& verb, const std::map<std::string, Tensord>& vp_matrices,
    const std::map<std::string, Eigen::VectorXd>& object_vectors,
    const TrainOptions& opts, const WarningSink& warn = {});

// A fully saturated phrase observation: argument lemmas in saturation order
// (object before subject for transitives) and the phrase vector learned for
// the whole construction as a single token.
struct Observation {
  std::vector<std::string> args;
  Eigen::VectorXd vector;
};

// Stage-indexed tables of partially applied tensors: stages[i] maps each
// argument i-tuple to its learned tensor; stages[arity] holds the observed
// phrase vectors as rank-1 tensors.  Tuples are unique per stage and all
// stage-i tensors share one shape.
struct SaturationTable {
  std::vector<std::map<std::vector<std::string>, Tensord>> stages;
};

struct NaryTraining {
  TrainedModel model;
  SaturationTable table;
};

// Multi-step regression for an n-ary function word.  Stage i models are
// trained on pairs grouped by shared i-argument prefix; the recursion runs
// from the observed phrases down to the fully unsaturated tensor.  Stage
// tables are keyed and processed in sorted tuple order, so the result does
// not depend on observation order.
NaryTraining train_nary(
    const std::string& word, int arity,
    const std::vector<Observation>& observations,
    const std::unordered_map<std::string, Eigen::VectorXd>& vectors,
    const TrainOptions& opts, const WarningSink& warn = {});

}  // namespace compsem

#endif
