#ifndef COMPSEM_COMPOSE_HPP
#define COMPSEM_COMPOSE_HPP

#include <string>

#include "compsem/lexicon.hpp"
#include "compsem/tensor.hpp"
#include "compsem/train.hpp"

namespace compsem {

enum class Method { Verb, Add, Multiply, Kronecker, Regression };

std::string method_name(Method method);
Method parse_method(const std::string& name);

struct SentenceInput {
  std::string subject;
  std::string verb;
  std::string object;  // empty for intransitives

  bool transitive() const { return !object.empty(); }
  SentenceInput with_verb(const std::string& v) const {
    return {subject, v, object};
  }
  SentenceInput swapped() const { return {object, verb, subject}; }
};

// A composed sentence representation: a k-vector for every method except
// transitive Kronecker, which produces a k x k matrix.
struct SentenceRep {
  Tensord value;
  Method method = Method::Verb;
  // Set when a multiplicative method consumed vectors with negative
  // components, where component-wise multiplication loses its meaning.
  bool negative_inputs = false;

  bool is_matrix() const { return value.rank() == 2; }
};

// Baseline: the verb vector stands in for the whole sentence.
SentenceRep compose_verb(const SentenceInput& input, const Lexicon& lex);

// Sum of the L2-normalized constituent vectors (arguments first, so the
// result is bit-identical under subject/object swap).
SentenceRep compose_add(const SentenceInput& input, const Lexicon& lex);

// Component-wise product of the constituent vectors.
SentenceRep compose_multiply(const SentenceInput& input, const Lexicon& lex);

// Transitive sentences only: (v (x) v) .* (subj (x) obj).  Intransitives
// reduce to compose_multiply and are rejected here.
SentenceRep compose_kronecker(const SentenceInput& input, const Lexicon& lex);

// Applies a learned verb tensor: V x subj for intransitives,
// V x obj x subj for transitives.
SentenceRep compose_regression(const SentenceInput& input,
                               const TrainedModel& model, const Lexicon& lex);

// Dispatcher; `model` is required for Method::Regression only.
SentenceRep compose(Method method, const SentenceInput& input,
                    const Lexicon& lex, const TrainedModel* model = nullptr);

// Cosine for vector representations, Frobenius cosine for matrices; mixing
// kinds or shapes is an error.
double similarity(const SentenceRep& a, const SentenceRep& b);

}  // namespace compsem

#endif
