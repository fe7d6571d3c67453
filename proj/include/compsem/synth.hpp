#ifndef COMPSEM_SYNTH_HPP
#define COMPSEM_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "compsem/eval.hpp"
#include "compsem/lexicon.hpp"
#include "compsem/train.hpp"

namespace compsem {

struct PlantedVerb {
  int arity = 1;
  Tensord tensor;
};

// Deterministic planted-truth fixture: argument vectors sampled uniform in
// [0,1) (non-negative, NMF-compatible), verb tensors uniform in [-1,1).
// Regenerating from the same seed is bit-identical.
struct PlantedWorld {
  std::uint64_t seed = 0;
  Eigen::Index k = 0;
  double sigma = 0.0;
  std::vector<std::string> nouns;
  Eigen::MatrixXd noun_vectors;  // nouns x k
  std::map<std::string, PlantedVerb> verbs;

  Eigen::VectorXd noun_vector(const std::string& noun) const;
  Lexicon noun_lexicon() const;
};

PlantedWorld gen_world(std::uint64_t seed, Eigen::Index k, long n_nouns,
                       const std::vector<std::pair<std::string, int>>& verbs,
                       double sigma);

// Noise-free sentence vector for an argument tuple in saturation order.
Eigen::VectorXd sentence_vector(const PlantedWorld& world,
                                const std::string& verb,
                                const std::vector<std::string>& args);

// Samples n distinct argument tuples and their (noisy, if sigma > 0)
// sentence vectors; errors when n exceeds the number of distinct tuples.
std::vector<Observation> gen_observations(const PlantedWorld& world,
                                          const std::string& verb, long n);

struct RecoveryError {
  double max_abs = 0.0;
  double rel_frobenius = 0.0;
};

RecoveryError recovery_error(const TrainedModel& learned,
                             const PlantedWorld& world,
                             const std::string& verb);

void save_world(const std::filesystem::path& dir, const PlantedWorld& world);
PlantedWorld load_world(const std::filesystem::path& dir);
void save_observations(const std::filesystem::path& path,
                       const std::vector<Observation>& observations);
std::vector<Observation> load_observations(const std::filesystem::path& path);

// Miniature corpus with dependency triples and a synthetic judgment set,
// for end-to-end pipeline fixtures.  Verb and noun tokens are given biased
// context distributions so composition similarities are non-trivial.
struct CorpusParams {
  std::uint64_t seed = 7;
  long sentences = 200;
  long nouns = 10;
  long intransitive_verbs = 3;
  long transitive_verbs = 3;
  long contexts = 24;
  long participants = 3;
  double transitive_share = 0.55;
};

struct SyntheticCorpus {
  std::vector<std::vector<std::string>> sentences;
  std::vector<TripleRecord> triples;
  std::vector<Judgment> judgments;
};

SyntheticCorpus gen_corpus(const CorpusParams& params);
void save_corpus(const std::filesystem::path& dir,
                 const SyntheticCorpus& corpus);

}  // namespace compsem

#endif
