#ifndef COMPSEM_REDUCE_HPP
#define COMPSEM_REDUCE_HPP

#include <Eigen/Core>

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "compsem/errors.hpp"

namespace compsem {

enum class ReductionMethod { Svd, Nmf };

std::string reduction_name(ReductionMethod method);
ReductionMethod parse_reduction(const std::string& name);

// k-dimensional embedding of the core targets plus the projection data
// needed to map new raw context-space vectors into the same space.
struct ReducedSpace {
  ReductionMethod method = ReductionMethod::Svd;
  Eigen::Index k = 0;
  std::vector<std::string> targets;
  Eigen::MatrixXd embeddings;  // targets x k
  // SVD: the k retained right singular vectors (contexts x k).
  // NMF: the factor H (k x contexts).
  Eigen::MatrixXd projector;

  std::unordered_map<std::string, long> index;
  void rebuild_index();

  bool has(const std::string& target) const { return index.count(target) > 0; }
  Eigen::VectorXd embedding(const std::string& target) const;

  void append(const std::string& target, const Eigen::VectorXd& vec);

  void save(const std::filesystem::path& dir) const;
  static ReducedSpace load(const std::filesystem::path& dir);
};

// Truncated SVD of the core matrix X = U S V^T: embeddings are the first k
// columns of U S, the projector the first k columns of V.  Each singular
// vector is flipped so its largest-magnitude component is positive, which
// makes repeated runs bit-identical.
ReducedSpace svd_reduce(const Eigen::MatrixXd& core,
                        std::vector<std::string> names, Eigen::Index k);

struct NmfOptions {
  long max_outer = 200;
  double tolerance = 1e-5;  // relative objective decrease that stops the outer loop
  long inner_max = 200;     // projected-gradient iterations per subproblem
  double armijo = 0.01;     // sufficient-decrease constant (sigma)
  double step_shrink = 0.1; // step-size backtracking factor (beta)
  std::uint64_t seed = 1;
};

struct NmfReduction {
  ReducedSpace space;
  std::vector<double> objectives;  // |X - WH|_F^2 per outer iteration, [0] = initial
  double input_squared_norm = 0.0; // of the sum-normalized matrix actually factored
  bool converged = false;
};

// Non-negative factorization X ~ WH minimizing |X - WH|_F^2 by alternating
// projected-gradient subproblems (Lin 2007).  The input is scaled to unit
// total sum first; W rows are the embeddings.  The objective never
// increases across outer iterations; if the relative decrease does not
// reach `tolerance` within `max_outer` iterations the best iterate is
// returned with converged = false.
NmfReduction nmf_reduce(const Eigen::MatrixXd& core,
                        std::vector<std::string> names, Eigen::Index k,
                        const NmfOptions& opts = {});

// Maps a raw context-space vector into the reduced space: right
// multiplication by V_k for SVD, non-negative least squares against H for
// NMF (same projected-gradient stopping rule as the factorization's inner
// solves).
Eigen::VectorXd project(const ReducedSpace& space, const Eigen::VectorXd& raw,
                        const NmfOptions& opts = {});

}  // namespace compsem

#endif
