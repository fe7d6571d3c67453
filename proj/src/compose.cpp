#include "compsem/compose.hpp"

namespace compsem {

std::string method_name(Method method) {
  switch (method) {
    case Method::Verb: return "verb";
    case Method::Add: return "add";
    case Method::Multiply: return "multiply";
    case Method::Kronecker: return "kronecker";
    case Method::Regression: return "regression";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "verb") return Method::Verb;
  if (name == "add") return Method::Add;
  if (name == "multiply") return Method::Multiply;
  if (name == "kronecker") return Method::Kronecker;
  if (name == "regression") return Method::Regression;
  throw ValueError("unknown composition method '" + name + "'");
}

namespace {

bool has_negative(const Eigen::VectorXd& v) { return (v.array() < 0.0).any(); }

}  // namespace

SentenceRep compose_verb(const SentenceInput& input, const Lexicon& lex) {
  return {Tensord::from_vector(lex.vector(input.verb)), Method::Verb, false};
}

SentenceRep compose_add(const SentenceInput& input, const Lexicon& lex) {
  const Tensord subj = l2_normalize(Tensord::from_vector(lex.vector(input.subject)));
  const Tensord verb = l2_normalize(Tensord::from_vector(lex.vector(input.verb)));
  Eigen::VectorXd sum = subj.as_vector();
  if (input.transitive()) {
    const Tensord obj = l2_normalize(Tensord::from_vector(lex.vector(input.object)));
    sum += obj.as_vector();
  }
  sum += verb.as_vector();
  return {Tensord::from_vector(std::move(sum)), Method::Add, false};
}

SentenceRep compose_multiply(const SentenceInput& input, const Lexicon& lex) {
  const Eigen::VectorXd subj = lex.vector(input.subject);
  const Eigen::VectorXd verb = lex.vector(input.verb);
  bool negative = has_negative(subj) || has_negative(verb);
  Eigen::VectorXd product = subj;
  if (input.transitive()) {
    const Eigen::VectorXd obj = lex.vector(input.object);
    negative = negative || has_negative(obj);
    product = product.cwiseProduct(obj);
  }
  product = product.cwiseProduct(verb);
  return {Tensord::from_vector(std::move(product)), Method::Multiply, negative};
}

SentenceRep compose_kronecker(const SentenceInput& input, const Lexicon& lex) {
  if (!input.transitive()) {
    throw ValueError(
        "kronecker is defined for transitive sentences only; it reduces to "
        "multiply for intransitives");
  }
  const Tensord verb = Tensord::from_vector(lex.vector(input.verb));
  const Tensord subj = Tensord::from_vector(lex.vector(input.subject));
  const Tensord obj = Tensord::from_vector(lex.vector(input.object));
  const bool negative = has_negative(verb.as_vector()) ||
                        has_negative(subj.as_vector()) ||
                        has_negative(obj.as_vector());
  Tensord rep = hadamard(kronecker(verb, verb), kronecker(subj, obj));
  return {std::move(rep), Method::Kronecker, negative};
}

SentenceRep compose_regression(const SentenceInput& input,
                               const TrainedModel& model, const Lexicon& lex) {
  const int needed = input.transitive() ? 2 : 1;
  if (model.arity != needed) {
    throw ValueError("model '" + model.lemma + "' has arity " +
                     std::to_string(model.arity) + " but the sentence needs " +
                     std::to_string(needed));
  }
  Tensord rep = model.tensor;
  if (input.transitive()) {
    rep = contract(rep, Tensord::from_vector(lex.vector(input.object)));
  }
  rep = contract(rep, Tensord::from_vector(lex.vector(input.subject)));
  return {std::move(rep), Method::Regression, false};
}

SentenceRep compose(Method method, const SentenceInput& input,
                    const Lexicon& lex, const TrainedModel* model) {
  switch (method) {
    case Method::Verb: return compose_verb(input, lex);
    case Method::Add: return compose_add(input, lex);
    case Method::Multiply: return compose_multiply(input, lex);
    case Method::Kronecker: return compose_kronecker(input, lex);
    case Method::Regression:
      if (!model) throw ValueError("regression composition needs a model");
      return compose_regression(input, *model, lex);
  }
  throw ValueError("unknown method");
}

double similarity(const SentenceRep& a, const SentenceRep& b) {
  if (a.value.rank() != b.value.rank() || !a.value.same_shape(b.value)) {
    throw IncomparableError("representations are not comparable: " +
                            a.value.shape_str() + " vs " + b.value.shape_str());
  }
  if (a.value.rank() == 1) return cosine(a.value, b.value);
  if (a.value.rank() == 2) return frobenius_cosine(a.value, b.value);
  throw IncomparableError("only vector and matrix representations compare");
}

}  // namespace compsem
