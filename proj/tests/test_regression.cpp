#include "doctest.h"

#include "compsem/regression.hpp"

#include "oracles.hpp"

using namespace compsem;

TEST_SUITE("regression") {

TEST_CASE("ridge hand examples") {
  Eigen::MatrixXd x(2, 1), y(2, 1);
  x << 1, 1;
  y << 2, 2;
  CHECK(ridge_solve(x, y, 0.0)(0, 0) == 2.0);
  CHECK(ridge_solve(x, y, 2.0)(0, 0) == 1.0);
}

TEST_CASE("identity design returns the responses") {
  Rng rng(10);
  const Eigen::MatrixXd y = oracle::random_matrix(rng, 4, 3);
  const Eigen::MatrixXd b =
      ridge_solve(Eigen::MatrixXd::Identity(4, 4), y, 0.0);
  CHECK((b - y).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("lambda zero on a singular design raises SingularError") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 1, 2, 2, 3, 3;  // rank 1
  const Eigen::MatrixXd y = Eigen::MatrixXd::Ones(3, 1);
  CHECK_THROWS_AS(ridge_solve(x, y, 0.0), SingularError);
  CHECK_NOTHROW(ridge_solve(x, y, 0.1));
}

TEST_CASE("ridge satisfies the stationarity condition") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 3 + static_cast<Eigen::Index>(rng.below(48));
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.below(20));
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng.below(5));
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, k);
    const Eigen::MatrixXd y = oracle::random_matrix(rng, n, m);
    const double lambda = rng.uniform(1e-6, 10.0);
    const Eigen::MatrixXd b = ridge_solve(x, y, lambda);
    Eigen::MatrixXd gram = x.transpose() * x;
    gram.diagonal().array() += lambda;
    const double residual =
        (gram * b - x.transpose() * y).cwiseAbs().maxCoeff();
    CHECK(residual <= 1e-8);
  }
}

TEST_CASE("shrinkage is monotone in lambda") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 12, 6);
    const Eigen::MatrixXd y = oracle::random_matrix(rng, 12, 4);
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {1e-4, 1e-2, 1.0, 100.0}) {
      const double norm = ridge_solve(x, y, lambda).norm();
      CHECK(norm <= previous + 1e-10);
      previous = norm;
    }
  }
}

TEST_CASE("gcv singleton grid is a forced choice") {
  Rng rng(13);
  const Eigen::MatrixXd x = oracle::random_matrix(rng, 10, 3);
  const Eigen::MatrixXd y = oracle::random_matrix(rng, 10, 2);
  const GcvChoice choice = gcv_select(x, y, {1.0});
  CHECK(choice.lambda == 1.0);
  CHECK(choice.scores.size() == 1);
}

TEST_CASE("gcv picks the smallest lambda on noiseless linear data") {
  Rng rng(14);
  const Eigen::MatrixXd x = oracle::random_matrix(rng, 60, 5);
  const Eigen::MatrixXd truth = oracle::random_matrix(rng, 5, 4);
  const Eigen::MatrixXd y = x * truth;
  const GcvChoice choice = gcv_select(x, y, {1e-8, 1.0, 100.0});
  CHECK(choice.lambda == 1e-8);
}

TEST_CASE("gcv scores match a direct evaluation of the definition") {
  Rng rng(15);
  const std::vector<double> grid = {1e-6, 1e-3, 0.1, 1.0, 10.0};
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index n = 8 + static_cast<Eigen::Index>(rng.below(20));
    const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.below(5));
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, k);
    const Eigen::MatrixXd y = oracle::random_matrix(rng, n, 3);
    const GcvChoice choice = gcv_select(x, y, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double direct = oracle::gcv_direct(x, y, grid[i]);
      CHECK(choice.scores[i] ==
            doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("gcv breaks ties toward the larger lambda") {
  // Y = 0 makes the residual zero for every lambda, so all scores tie.
  Eigen::MatrixXd x(4, 2);
  x << 1, 0, 0, 1, 1, 1, 1, -1;
  const Eigen::MatrixXd y = Eigen::MatrixXd::Zero(4, 2);
  const GcvChoice choice = gcv_select(x, y, {1e-3, 1e-2, 10.0});
  CHECK(choice.lambda == 10.0);  // all scores are exactly zero
}

TEST_CASE("gcv errors when the trace denominator vanishes everywhere") {
  // n = k with lambda = 0: H is the identity, tr(I - H) = 0.
  Eigen::MatrixXd x(3, 3);
  x << 2, 0, 0, 0, 3, 0, 0, 0, 4;
  const Eigen::MatrixXd y = Eigen::MatrixXd::Ones(3, 2);
  CHECK_THROWS_AS(gcv_select(x, y, {0.0}), Error);
}

}  // TEST_SUITE
