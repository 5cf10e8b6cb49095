#ifndef GRIDMRF_ESTIMATE_HPP
#define GRIDMRF_ESTIMATE_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gridmrf/likelihood.hpp"

namespace gridmrf {

enum class FitMethod {
  exact,          // no nugget; optimizes log kappa only
  exact_nugget,   // nugget, lean path; optimizes (log kappa, log delta)
  approx_none,
  approx_precision,
  approx_periodic,
  indblocks
};

FitMethod fit_method_from_string(const std::string& s);
std::string to_string(FitMethod m);

struct ProfileResult {
  double mu_hat = 0.0;
  double tau_hat = 0.0;
  double loglik = 0.0;  // profiled loglikelihood value
};

// Closed-form profile of mu and tau at fixed (kappa, nu, delta), where
// delta = tau^2 sigma2 so that M = C(kappa, nu) + delta I with C the
// unit-tau covariance. blocks required for FitMethod::indblocks.
ProfileResult profile_closed_forms(double kappa, int nu, double delta,
                                   const GridMask& mask, const Eigen::VectorXd& y,
                                   FitMethod method, int J = 3,
                                   const std::vector<std::vector<int>>* blocks = nullptr);

struct FitConfig {
  int J = 3;
  double tol = 1e-6;       // simplex function-value tolerance
  int max_iter = 200;
  double kappa0 = 0.1;     // search start
  bool nugget = false;     // adds log delta for indblocks
  int block_size = 40;     // indblocks tile side
};

struct TracePoint {
  double kappa = 0.0;
  double delta = 0.0;
  double loglik = 0.0;
};

struct FitResult {
  ModelParams params;  // at the optimum (profiled mu, tau substituted back)
  LoglikBreakdown loglik;
  int iterations = 0;
  bool converged = false;
  std::string method;
  std::vector<TracePoint> trace;
};

// Maximizes the profiled loglikelihood over log kappa (and log delta for
// nugget methods) with a derivative-free simplex search.
FitResult fit(const GridMask& mask, const Eigen::VectorXd& y, int nu,
              FitMethod method, const FitConfig& config = {});

}  // namespace gridmrf

#endif
