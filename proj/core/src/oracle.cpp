#include "gridmrf/oracle.hpp"

#include <Eigen/Cholesky>
#include <chrono>
#include <cmath>

#include "gridmrf/covariance.hpp"

namespace gridmrf {

namespace {

constexpr double log_two_pi = 1.8378770664093453;

Eigen::MatrixXd dense_sigma(const ModelParams& params, const GridMask& mask, int J_hi) {
  CovarianceTable table = table_for_grid(params, mask.n1, mask.n2, J_hi);
  int n = mask.n_obs();
  Eigen::MatrixXd s(n, n);
  for (int j = 0; j < n; ++j) {
    auto [rj, cj] = mask.coord(j);
    for (int i = 0; i < n; ++i) {
      auto [ri, ci] = mask.coord(i);
      s(i, j) = table.at(ri - rj, ci - cj);
    }
  }
  return s;
}

}  // namespace

LoglikBreakdown dense_loglik(const ModelParams& params, const GridMask& mask,
                             const Eigen::VectorXd& y, int J_hi) {
  params.validate();
  if (y.size() != mask.n_obs())
    throw std::invalid_argument("data vector length does not match observation count");
  if (mask.n_obs() > 4096)
    throw size_guard_error("dense reference likelihood limited to 4096 observations");
  auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXd s = dense_sigma(params, mask, J_hi);
  s.diagonal().array() += params.sigma2;
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw numerical_error("covariance not positive definite");
  LoglikBreakdown b;
  b.n_obs = mask.n_obs();
  for (int i = 0; i < b.n_obs; ++i) b.logdet += 2.0 * std::log(llt.matrixLLT()(i, i));
  Eigen::VectorXd centered = y.array() - params.mu;
  b.quadform = centered.dot(llt.solve(centered));
  b.loglik = -0.5 * b.n_obs * log_two_pi - 0.5 * b.logdet - 0.5 * b.quadform;
  b.method = "dense-oracle";
  b.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return b;
}

Eigen::MatrixXd dense_Q(const ModelParams& params, const GridMask& mask, int J_hi) {
  params.validate();
  if (mask.n_obs() > 2048)
    throw size_guard_error("dense precision reference limited to 2048 observations");
  Eigen::MatrixXd s = dense_sigma(params, mask, J_hi);
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw numerical_error("covariance not positive definite");
  return llt.solve(Eigen::MatrixXd::Identity(mask.n_obs(), mask.n_obs()));
}

double delta_J(const ModelParams& params, int n1, int n2, int J) {
  // Tables on their exact (n1 J, n2 J) tori: no padding, so this measures the
  // oversampling error alone.
  CovarianceTable a = covariance_table(params, n1, n2, J);
  CovarianceTable b = covariance_table(params, n1, n2, J + 1);
  double worst = 0.0;
  for (int h2 = 0; h2 < n2; ++h2)
    for (int h1 = 0; h1 < n1; ++h1)
      worst = std::max(worst, std::fabs(a.at(h1, h2) - b.at(h1, h2)));
  return worst;
}

}  // namespace gridmrf
