#include "doctest.h"

#include "compsem/compose.hpp"

#include "oracles.hpp"

using namespace compsem;

namespace {

Lexicon make_lexicon(const std::vector<std::string>& tokens,
                     const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return Lexicon(tokens, m);
}

// subject/object vectors plus a pair of verbs over a small space
Lexicon fixture_lexicon() {
  return make_lexicon({"mom", "boy", "sing", "dance", "panda", "bamboo", "eat"},
                      {{1.0, 0.5, 0.0},
                       {0.2, 1.0, 0.3},
                       {0.9, 0.1, 0.4},
                       {0.8, 0.3, 0.2},
                       {0.3, 0.9, 0.6},
                       {0.7, 0.2, 1.0},
                       {0.5, 0.5, 0.5}});
}

}  // namespace

TEST_SUITE("compose") {

TEST_CASE("verb baseline ignores the arguments") {
  const Lexicon lex = fixture_lexicon();
  const SentenceRep a = compose_verb({"mom", "sing", ""}, lex);
  const SentenceRep b = compose_verb({"boy", "dance", ""}, lex);
  CHECK(similarity(a, b) ==
        cosine(Tensord::from_vector(lex.vector("sing")),
               Tensord::from_vector(lex.vector("dance"))));

  const SentenceRep c = compose_verb({"panda", "sing", ""}, lex);
  CHECK(similarity(a, c) == 1.0);

  CHECK_THROWS_AS(compose_verb({"mom", "fly", ""}, lex), OovError);
}

TEST_CASE("add sums normalized constituents") {
  const Lexicon lex = make_lexicon({"s", "v"}, {{1, 0}, {0, 1}});
  const SentenceRep rep = compose_add({"s", "v", ""}, lex);
  CHECK(rep.value[0] == 1.0);
  CHECK(rep.value[1] == 1.0);
}

TEST_CASE("add on a transitive sentence sums three normalized vectors") {
  const Lexicon lex = fixture_lexicon();
  const SentenceRep rep = compose_add({"panda", "eat", "bamboo"}, lex);
  const Eigen::VectorXd expected = lex.vector("panda").normalized() +
                                   lex.vector("bamboo").normalized() +
                                   lex.vector("eat").normalized();
  CHECK(rep.value.as_vector() == expected);
}

TEST_CASE("multiply is the component-wise product") {
  const Lexicon lex = make_lexicon({"s", "v"}, {{1, 2}, {3, 0}});
  const SentenceRep rep = compose_multiply({"s", "v", ""}, lex);
  CHECK(rep.value[0] == 3.0);
  CHECK(rep.value[1] == 0.0);

  // an all-ones verb leaves the argument product unchanged
  const Lexicon lex3 = make_lexicon({"a", "b", "one"},
                                    {{2, 3}, {4, 5}, {1, 1}});
  const SentenceRep prod = compose_multiply({"a", "one", "b"}, lex3);
  CHECK(prod.value[0] == 8.0);
  CHECK(prod.value[1] == 15.0);
}

TEST_CASE("multiply and add cannot see word order") {
  const Lexicon lex = fixture_lexicon();
  const SentenceInput pandas{"panda", "eat", "bamboo"};
  const SentenceInput swapped = pandas.swapped();

  const SentenceRep m1 = compose_multiply(pandas, lex);
  const SentenceRep m2 = compose_multiply(swapped, lex);
  CHECK(m1.value.data() == m2.value.data());
  CHECK(similarity(m1, m2) == 1.0);

  const SentenceRep a1 = compose_add(pandas, lex);
  const SentenceRep a2 = compose_add(swapped, lex);
  CHECK(a1.value.data() == a2.value.data());
}

TEST_CASE("kronecker hand example") {
  const Lexicon lex = make_lexicon({"s", "v", "o"},
                                   {{1, 0}, {1, 2}, {0, 1}});
  const SentenceRep rep = compose_kronecker({"s", "v", "o"}, lex);
  REQUIRE(rep.is_matrix());
  CHECK(rep.value(0, 0) == 0.0);
  CHECK(rep.value(0, 1) == 2.0);
  CHECK(rep.value(1, 0) == 0.0);
  CHECK(rep.value(1, 1) == 0.0);
}

TEST_CASE("kronecker maps argument swap to matrix transpose") {
  const Lexicon lex = fixture_lexicon();
  const SentenceRep forward = compose_kronecker({"panda", "eat", "bamboo"}, lex);
  const SentenceRep backward = compose_kronecker({"bamboo", "eat", "panda"}, lex);
  const Eigen::MatrixXd f = forward.value.as_matrix();
  const Eigen::MatrixXd b = backward.value.as_matrix();
  CHECK(f == b.transpose());
}

TEST_CASE("kronecker degenerate cases") {
  const Lexicon lex = make_lexicon({"s", "v", "zero"},
                                   {{1, 2}, {3, 4}, {0, 0}});
  const SentenceRep rep = compose_kronecker({"s", "v", "zero"}, lex);
  CHECK(rep.value.data().cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(compose_kronecker({"s", "v", ""}, lex), ValueError);
}

TEST_CASE("intransitive multiply equals the degenerate kronecker") {
  const Lexicon lex = fixture_lexicon();
  for (const auto& subject : {"mom", "boy", "panda"}) {
    for (const auto& verb : {"sing", "dance", "eat"}) {
      const SentenceRep rep = compose_multiply({subject, verb, ""}, lex);
      const Tensord direct =
          hadamard(Tensord::from_vector(lex.vector(subject)),
                   Tensord::from_vector(lex.vector(verb)));
      CHECK(rep.value.data() == direct.data());
    }
  }
}

TEST_CASE("regression applies the learned tensor") {
  const Lexicon lex = make_lexicon({"s", "v", "o"},
                                   {{0.4, 0.6}, {1, 1}, {0.3, 0.9}});
  TrainedModel identity;
  identity.lemma = "v";
  identity.arity = 1;
  identity.tensor = Tensord::identity(2);
  const SentenceRep rep = compose_regression({"s", "v", ""}, identity, lex);
  CHECK(rep.value.as_vector() == lex.vector("s"));

  CHECK_THROWS_AS(compose_regression({"s", "v", "o"}, identity, lex),
                  ValueError);
}

TEST_CASE("regression picks the object slice then applies the subject") {
  Rng rng(60);
  const Eigen::Index k = 2;
  const Tensord m1 = oracle::random_tensor(rng, {k, k});
  const Tensord m2 = oracle::random_tensor(rng, {k, k});
  // tensor with contract(T, e0) = m1, contract(T, e1) = m2
  Tensord t({k, k, k});
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      t(i, j, 0) = m1(i, j);
      t(i, j, 1) = m2(i, j);
    }
  TrainedModel model;
  model.lemma = "eat";
  model.arity = 2;
  model.tensor = t;

  const Lexicon lex = make_lexicon({"s", "o"}, {{0, 1}, {1, 0}});
  const SentenceRep rep = compose_regression({"s", "eat", "o"}, model, lex);
  // obj = e0 selects m1; subj = e1 selects m1's second column
  CHECK(rep.value[0] == m1(0, 1));
  CHECK(rep.value[1] == m1(1, 1));
}

TEST_CASE("regression is sensitive to argument order") {
  Rng rng(61);
  const Eigen::Index k = 3;
  TrainedModel model;
  model.lemma = "eat";
  model.arity = 2;
  model.tensor = oracle::random_tensor(rng, {k, k, k});  // generic, asymmetric

  const Lexicon lex = make_lexicon(
      {"panda", "bamboo"}, {{0.9, 0.1, 0.3}, {0.2, 0.8, 0.5}});
  const SentenceRep forward =
      compose_regression({"panda", "eat", "bamboo"}, model, lex);
  const SentenceRep backward =
      compose_regression({"bamboo", "eat", "panda"}, model, lex);
  CHECK(similarity(forward, backward) < 0.999);
}

TEST_CASE("similarity agrees with the unfolding oracle for matrices") {
  Rng rng(62);
  for (int trial = 0; trial < 10; ++trial) {
    SentenceRep a{oracle::random_tensor(rng, {3, 3}), Method::Kronecker, false};
    SentenceRep b{oracle::random_tensor(rng, {3, 3}), Method::Kronecker, false};
    CHECK(similarity(a, b) == cosine(unfold(a.value), unfold(b.value)));
    CHECK(similarity(a, b) == similarity(b, a));
    CHECK(similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("vector and matrix representations are incomparable") {
  Rng rng(63);
  SentenceRep vec{Tensord::from_vector(oracle::random_vector(rng, 4)),
                  Method::Multiply, false};
  SentenceRep mat{oracle::random_tensor(rng, {2, 2}), Method::Kronecker, false};
  CHECK_THROWS_AS(similarity(vec, mat), IncomparableError);
}

TEST_CASE("the dispatcher requires a model only for regression") {
  const Lexicon lex = make_lexicon({"s", "v"}, {{1, 2}, {3, 4}});
  CHECK_NOTHROW(compose(Method::Multiply, {"s", "v", ""}, lex));
  CHECK_THROWS_AS(compose(Method::Regression, {"s", "v", ""}, lex),
                  ValueError);
}

TEST_CASE("multiplicative methods flag negative inputs") {
  const Lexicon lex = make_lexicon({"s", "v", "o"},
                                   {{1, -2}, {3, 4}, {1, 1}});
  CHECK(compose_multiply({"s", "v", ""}, lex).negative_inputs);
  CHECK(compose_kronecker({"s", "v", "o"}, lex).negative_inputs);
  const Lexicon positive = make_lexicon({"s", "v"}, {{1, 2}, {3, 4}});
  CHECK_FALSE(compose_multiply({"s", "v", ""}, positive).negative_inputs);
}

}  // TEST_SUITE
