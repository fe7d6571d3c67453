#ifndef COMPSEM_ERRORS_HPP
#define COMPSEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace compsem {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or dimension mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

// Invalid value: zero vector where a direction is needed, rating out of
// range, negative entries where non-negativity is required, ...
struct ValueError : Error {
  using Error::Error;
};

// Unreadable or malformed input file.
struct IoError : Error {
  using Error::Error;
};

// X^T X is singular and lambda = 0 was requested.
struct SingularError : Error {
  using Error::Error;
};

// Fewer training examples than the configured minimum.
struct InsufficientDataError : Error {
  InsufficientDataError(const std::string& what, long count)
      : Error(what), count(count) {}
  long count;
};

// Lemma missing from the vector space.
struct OovError : Error {
  explicit OovError(const std::string& lemma)
      : Error("out-of-vocabulary lemma: " + lemma), lemma(lemma) {}
  std::string lemma;
};

// Sentence representations of different kinds cannot be compared.
struct IncomparableError : Error {
  using Error::Error;
};

// A stage of the multi-step regression had no viable regression group.
struct StageError : Error {
  StageError(const std::string& what, int stage) : Error(what), stage(stage) {}
  int stage;
};

}  // namespace compsem

#endif
