#ifndef COMPSEM_REGRESSION_HPP
#define COMPSEM_REGRESSION_HPP

#include <Eigen/Core>

#include <vector>

#include "compsem/errors.hpp"

namespace compsem {

// Closed-form ridge solution B = (X^T X + lambda I)^{-1} X^T Y with the
// prediction convention Yhat = X B.  lambda = 0 requires X^T X invertible.
Eigen::MatrixXd ridge_solve(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                            double lambda);

struct GcvChoice {
  double lambda = 0.0;
  Eigen::MatrixXd coefficients;
  // GCV score per grid point, in the input grid's order; +inf marks points
  // where the score is undefined (zero residual trace or singular system).
  std::vector<double> scores;
};

// Picks lambda from the grid by generalized cross-validation
//   GCV(lambda) = n |Y - X B(lambda)|_F^2 / tr(I - H(lambda))^2,
// H(lambda) = X (X^T X + lambda I)^{-1} X^T, ties broken toward larger
// lambda.  Errors if every grid point is undefined (over-parameterized).
GcvChoice gcv_select(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                     const std::vector<double>& grid);

// lambda grid used when a config does not provide one: 10^-4 .. 10^2.
std::vector<double> default_lambda_grid();

}  // namespace compsem

#endif
