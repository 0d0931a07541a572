#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tvpsvm/rng.hpp"

namespace tvpsvm {

// Scalar-observation linear-Gaussian system with a random-walk transition:
//
//   y_t     = x_t' theta_t + eps_t,        eps_t ~ N(0, r_t)
//   theta_t = theta_{t-1} + e_t,           e_t   ~ N(0, diag(q_t))
//   theta_0 ~ N(m0, diag(p0))
//
// Columns of x and q index time t = 1..T.
struct LinearGaussianSystem {
  Eigen::VectorXd y;   // T
  Eigen::MatrixXd x;   // k x T loadings
  Eigen::VectorXd r;   // T observation variances, > 0
  Eigen::MatrixXd q;   // k x T state innovation variances, >= 0
  Eigen::VectorXd m0;  // k
  Eigen::VectorXd p0;  // k initial variances, >= 0

  int length() const { return static_cast<int>(y.size()); }
  int dim() const { return static_cast<int>(m0.size()); }

  // Throws InputError on inconsistent shapes, NumericError on non-finite or
  // sign-violating entries.
  void validate() const;
};

struct FilterResult {
  Eigen::MatrixXd mean;              // k x T filtered means
  std::vector<Eigen::MatrixXd> cov;  // T filtered covariances, k x k
  double loglik = 0.0;
};

// Joint draw of theta_{0:T} from the smoothing distribution.
struct StatePathDraw {
  Eigen::VectorXd theta0;  // k
  Eigen::MatrixXd theta;   // k x T

  // Squared increment (theta_{j,t} - theta_{j,t-1})^2 with theta_{j,0} taken
  // from the initial condition of the draw; t is 1-based.
  double squared_increment(int j, int t) const {
    const double prev = t == 1 ? theta0(j) : theta(j, t - 2);
    const double d = theta(j, t - 1) - prev;
    return d * d;
  }
};

struct SmootherMoments {
  Eigen::MatrixXd mean;  // k x T
  Eigen::MatrixXd var;   // k x T marginal variances
};

FilterResult kalman_filter(const LinearGaussianSystem& sys);

StatePathDraw ffbs(const LinearGaussianSystem& sys, RngStream& rng);

// Draw theta_{0:T} from the prior random walk alone (no observation update).
StatePathDraw prior_path_draw(const LinearGaussianSystem& sys, RngStream& rng);

SmootherMoments smoother_moments(const LinearGaussianSystem& sys);

}  // namespace tvpsvm
