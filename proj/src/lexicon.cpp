#include "compsem/lexicon.hpp"

namespace compsem {

Lexicon::Lexicon(std::vector<std::string> tokens, Eigen::MatrixXd vectors)
    : tokens_(std::move(tokens)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(tokens_.size()) != vectors_.rows()) {
    throw ShapeError("lexicon: " + std::to_string(tokens_.size()) +
                     " tokens for " + std::to_string(vectors_.rows()) +
                     " vector rows");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    index_.emplace(tokens_[i], static_cast<long>(i));
}

Lexicon Lexicon::from_reduced(const ReducedSpace& space) {
  return Lexicon(space.targets, space.embeddings);
}

Lexicon Lexicon::from_sparse(const SparseMatrix& matrix,
                             const Vocabulary& vocab) {
  return Lexicon(vocab.targets, matrix.dense());
}

Eigen::VectorXd Lexicon::vector(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw OovError(token);
  return vectors_.row(it->second);
}

}  // namespace compsem
