#ifndef COMPSEM_LEXICON_HPP
#define COMPSEM_LEXICON_HPP

#include <Eigen/Core>

#include <string>
#include <unordered_map>
#include <vector>

#include "compsem/errors.hpp"
#include "compsem/reduce.hpp"
#include "compsem/sparse.hpp"

namespace compsem {

// Immutable token -> vector lookup shared by the composers; rows come from
// either a reduced space or the raw weighted matrix.
class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::vector<std::string> tokens, Eigen::MatrixXd vectors);

  static Lexicon from_reduced(const ReducedSpace& space);
  static Lexicon from_sparse(const SparseMatrix& matrix,
                             const Vocabulary& vocab);

  Eigen::Index dim() const { return vectors_.cols(); }
  Eigen::Index size() const { return vectors_.rows(); }
  bool has(const std::string& token) const { return index_.count(token) > 0; }

  // Throws OovError when the token is absent.
  Eigen::VectorXd vector(const std::string& token) const;

  const std::vector<std::string>& tokens() const { return tokens_; }
  bool any_negative() const { return (vectors_.array() < 0.0).any(); }

 private:
  std::vector<std::string> tokens_;
  Eigen::MatrixXd vectors_;
  std::unordered_map<std::string, long> index_;
};

}  // namespace compsem

#endif
