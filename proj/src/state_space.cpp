#include "tvpsvm/state_space.hpp"

#include <cmath>

#include "tvpsvm/errors.hpp"

namespace tvpsvm {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;
constexpr double kVarFloor = 1e-12;

double guarded_predictive_variance(double s) {
  if (!std::isfinite(s)) {
    throw NumericError("kalman_filter: non-finite predictive variance");
  }
  if (s < kVarFloor) {
    if (s < -1e-8) {
      throw NumericError("kalman_filter: negative predictive variance");
    }
    s = kVarFloor;
  }
  return s;
}

// Sample from N(mean, cov) where cov may be merely positive semidefinite
// (coordinates pinned by zero innovation variance). Cholesky when possible,
// spectral square root with clamped eigenvalues otherwise.
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& cov, RngStream& rng) {
  const int k = static_cast<int>(mean.size());
  Eigen::VectorXd z(k);
  for (int i = 0; i < k; ++i) z(i) = rng.normal();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    return mean + llt.matrixL() * z;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return mean + es.eigenvectors() * root.asDiagonal() * z;
}

// Solve M * G' = P for G where M is PSD (possibly singular when a state is
// pinned). Spectral pseudo-inverse; consistent systems only.
Eigen::MatrixXd psd_solve(const Eigen::MatrixXd& m, const Eigen::MatrixXd& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double cutoff =
      es.eigenvalues().cwiseAbs().maxCoeff() * 1e-13 + 1e-300;
  Eigen::VectorXd inv = es.eigenvalues();
  for (int i = 0; i < inv.size(); ++i) {
    inv(i) = inv(i) > cutoff ? 1.0 / inv(i) : 0.0;
  }
  return p * es.eigenvectors() * inv.asDiagonal() *
         es.eigenvectors().transpose();
}

struct ForwardPass {
  Eigen::MatrixXd mean;              // k x T filtered means
  std::vector<Eigen::MatrixXd> cov;  // filtered covariances
  double loglik = 0.0;
};

ForwardPass forward_filter(const LinearGaussianSystem& sys) {
  sys.validate();
  const int t_len = sys.length();
  const int k = sys.dim();
  ForwardPass out;
  out.mean.resize(k, t_len);
  out.cov.resize(t_len);

  Eigen::VectorXd m = sys.m0;
  Eigen::MatrixXd p = sys.p0.asDiagonal();
  for (int t = 0; t < t_len; ++t) {
    p.diagonal() += sys.q.col(t);
    const Eigen::VectorXd xt = sys.x.col(t);
    const Eigen::VectorXd px = p * xt;
    const double s = guarded_predictive_variance(xt.dot(px) + sys.r(t));
    const double innov = sys.y(t) - xt.dot(m);
    out.loglik += -0.5 * (kLog2Pi + std::log(s) + innov * innov / s);
    const Eigen::VectorXd gain = px / s;
    m += gain * innov;
    p -= gain * px.transpose();
    p = 0.5 * (p + p.transpose()).eval();
    out.mean.col(t) = m;
    out.cov[t] = p;
  }
  return out;
}

}  // namespace

void LinearGaussianSystem::validate() const {
  const int t_len = length();
  const int k = dim();
  if (x.cols() != t_len || r.size() != t_len || q.cols() != t_len) {
    throw InputError("LinearGaussianSystem: time dimensions disagree");
  }
  if (x.rows() != k || q.rows() != k || p0.size() != k) {
    throw InputError("LinearGaussianSystem: state dimensions disagree");
  }
  auto finite = [](const auto& a) { return a.allFinite(); };
  if (!finite(y) || !finite(x) || !finite(r) || !finite(q) || !finite(m0) ||
      !finite(p0)) {
    throw NumericError("LinearGaussianSystem: non-finite entry");
  }
  if ((r.array() <= 0.0).any()) {
    throw NumericError("LinearGaussianSystem: observation variance <= 0");
  }
  if ((q.array() < 0.0).any() || (p0.array() < 0.0).any()) {
    throw NumericError("LinearGaussianSystem: negative state variance");
  }
}

FilterResult kalman_filter(const LinearGaussianSystem& sys) {
  ForwardPass fwd = forward_filter(sys);
  return {std::move(fwd.mean), std::move(fwd.cov), fwd.loglik};
}

StatePathDraw ffbs(const LinearGaussianSystem& sys, RngStream& rng) {
  ForwardPass fwd = forward_filter(sys);
  const int t_len = sys.length();
  const int k = sys.dim();

  StatePathDraw draw;
  draw.theta.resize(k, t_len);
  draw.theta.col(t_len - 1) =
      sample_mvn(fwd.mean.col(t_len - 1), fwd.cov[t_len - 1], rng);

  // Backward pass: theta_t | theta_{t+1} with gain G = P_t (P_t + Q_{t+1})^-1.
  auto backward_step = [&](const Eigen::VectorXd& m, const Eigen::MatrixXd& p,
                           const Eigen::VectorXd& q_next,
                           const Eigen::VectorXd& next_draw) {
    Eigen::MatrixXd pred = p;
    pred.diagonal() += q_next;
    const Eigen::MatrixXd gain = psd_solve(pred, p);
    const Eigen::VectorXd mean = m + gain * (next_draw - m);
    Eigen::MatrixXd cov = p - gain * p;
    cov = 0.5 * (cov + cov.transpose()).eval();
    return sample_mvn(mean, cov, rng);
  };

  for (int t = t_len - 2; t >= 0; --t) {
    draw.theta.col(t) = backward_step(fwd.mean.col(t), fwd.cov[t],
                                      sys.q.col(t + 1), draw.theta.col(t + 1));
  }
  draw.theta0 = backward_step(sys.m0, sys.p0.asDiagonal(), sys.q.col(0),
                              draw.theta.col(0));
  return draw;
}

StatePathDraw prior_path_draw(const LinearGaussianSystem& sys,
                              RngStream& rng) {
  const int t_len = sys.length();
  const int k = sys.dim();
  StatePathDraw draw;
  draw.theta0.resize(k);
  for (int j = 0; j < k; ++j) {
    draw.theta0(j) = sample_gaussian(sys.m0(j), sys.p0(j), rng);
  }
  draw.theta.resize(k, t_len);
  Eigen::VectorXd cur = draw.theta0;
  for (int t = 0; t < t_len; ++t) {
    for (int j = 0; j < k; ++j) {
      cur(j) = sample_gaussian(cur(j), sys.q(j, t), rng);
    }
    draw.theta.col(t) = cur;
  }
  return draw;
}

SmootherMoments smoother_moments(const LinearGaussianSystem& sys) {
  ForwardPass fwd = forward_filter(sys);
  const int t_len = sys.length();
  const int k = sys.dim();

  SmootherMoments out;
  out.mean.resize(k, t_len);
  out.var.resize(k, t_len);
  Eigen::VectorXd m_s = fwd.mean.col(t_len - 1);
  Eigen::MatrixXd p_s = fwd.cov[t_len - 1];
  out.mean.col(t_len - 1) = m_s;
  out.var.col(t_len - 1) = p_s.diagonal();

  for (int t = t_len - 2; t >= 0; --t) {
    const Eigen::VectorXd& m = fwd.mean.col(t);
    const Eigen::MatrixXd& p = fwd.cov[t];
    Eigen::MatrixXd pred = p;
    pred.diagonal() += sys.q.col(t + 1);
    const Eigen::MatrixXd gain = psd_solve(pred, p);
    m_s = m + gain * (m_s - m);
    p_s = p + gain * (p_s - pred) * gain.transpose();
    p_s = 0.5 * (p_s + p_s.transpose()).eval();
    out.mean.col(t) = m_s;
    out.var.col(t) = p_s.diagonal();
  }
  return out;
}

}  // namespace tvpsvm
