#ifndef GRIDMRF_ORACLE_HPP
#define GRIDMRF_ORACLE_HPP

#include <Eigen/Dense>

#include "gridmrf/likelihood.hpp"

namespace gridmrf {

// Slow reference implementations, used by tests and the CLI --verify mode.

// Direct dense Cholesky evaluation of the loglikelihood with a
// high-accuracy covariance table. Guard: n_obs <= 4096.
LoglikBreakdown dense_loglik(const ModelParams& params, const GridMask& mask,
                             const Eigen::VectorXd& y, int J_hi = 64);

// Explicit inverse of the latent covariance over the observations
// (observation order). Guard: n_obs <= 2048.
Eigen::MatrixXd dense_Q(const ModelParams& params, const GridMask& mask,
                        int J_hi = 64);

// Max over lags of the n-grid of |K(h; J, n) - K(h; J+1, n)|, with the
// tables on their exact (n1 J, n2 J) tori.
double delta_J(const ModelParams& params, int n1, int n2, int J);

}  // namespace gridmrf

#endif
