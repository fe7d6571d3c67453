#include "compsem/regression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace compsem {

Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                            double lambda) {
  if (X.rows() != Y.rows()) {
    throw ShapeError("ridge_solve: X has " + std::to_string(X.rows()) +
                     " rows but Y has " + std::to_string(Y.rows()));
  }
  if (lambda < 0.0) throw ValueError("ridge_solve: lambda must be >= 0");

  Eigen::MatrixXd gram = X.transpose() * X;
  gram.diagonal().array() += lambda;
  if (lambda == 0.0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible()) {
      throw SingularError(
          "ridge_solve: X^T X is singular at lambda = 0; use lambda > 0");
    }
    return lu.solve(X.transpose() * Y);
  }
  return gram.ldlt().solve(X.transpose() * Y);
}

GcvChoice gcv_select(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                     const std::vector<double>& grid) {
  if (grid.empty()) throw ValueError("gcv_select: empty lambda grid");
  const double n = static_cast<double>(X.rows());
  const Eigen::MatrixXd gram = X.transpose() * X;

  GcvChoice choice;
  choice.scores.assign(grid.size(), std::numeric_limits<double>::infinity());
  double best = std::numeric_limits<double>::infinity();
  bool any = false;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    Eigen::MatrixXd coef;
    try {
      coef = ridge_solve(X, Y, grid[i]);
    } catch (const SingularError&) {
      continue;  // lambda = 0 on a rank-deficient design: score stays +inf
    }
    Eigen::MatrixXd shifted = gram;
    shifted.diagonal().array() += grid[i];
    // tr(H) = tr((X^T X + lambda I)^{-1} X^T X)
    const double trace_h = shifted.ldlt().solve(gram).trace();
    const double denom = n - trace_h;
    if (denom * denom <= 0.0) continue;
    const double rss = (Y - X * coef).squaredNorm();
    const double score = n * rss / (denom * denom);
    choice.scores[i] = score;
    // <= keeps the larger lambda on exact ties (grid scanned in input order
    // after sorting below would complicate score bookkeeping; instead prefer
    // the larger lambda explicitly).
    if (!any || score < best ||
        (score == best && grid[i] > choice.lambda)) {
      best = score;
      choice.lambda = grid[i];
      choice.coefficients = std::move(coef);
      any = true;
    }
  }
  if (!any) {
    throw Error(
        "gcv_select: GCV undefined on the whole grid (over-parameterized "
        "system, tr(I - H) = 0)");
  }
  return choice;
}

std::vector<double> default_lambda_grid() {
  return {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
}

}  // namespace compsem
