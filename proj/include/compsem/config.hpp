#ifndef COMPSEM_CONFIG_HPP
#define COMPSEM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "compsem/regression.hpp"

namespace compsem {

// Flat key-value pipeline configuration; command-line flags override file
// values.  Defaults mirror the usual full-scale setup but every threshold
// is adjustable so desk-scale corpora work.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::filesystem::path triples;
  std::filesystem::path dataset;
  std::filesystem::path out = "out";

  std::string weighting = "pmi";  // pmi | lmi
  std::string reduction = "svd";  // svd | nmf | none
  long k = 300;

  std::vector<double> lambda_grid = default_lambda_grid();
  long min_examples = 3;
  long min_nonzero_dims = 10;

  long max_targets = 12000;
  long max_contexts = 10000;
  long stoplist_size = 300;

  long nmf_max_outer = 200;
  double nmf_tolerance = 1e-5;
  long nmf_inner_max = 200;
  double nmf_armijo = 0.01;
  double nmf_step_shrink = 0.1;

  std::uint64_t seed = 1;

  static PipelineConfig from_file(const std::filesystem::path& path);
  // Throws ValueError for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

}  // namespace compsem

#endif
