#ifndef GRIDMRF_PREDICT_HPP
#define GRIDMRF_PREDICT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gridmrf/covariance.hpp"
#include "gridmrf/grid.hpp"

namespace gridmrf {

struct PredictionRequest {
  std::vector<Location> targets;  // unobserved cells (canonical orientation);
                                  // may fall outside the grid rectangle
  bool want_sd = false;
  int n_sims = 0;
  std::uint64_t seed = 0;
};

struct Predictions {
  Eigen::VectorXd mean;  // per target
  Eigen::VectorXd sd;    // per target, empty unless want_sd
};

// Conditional mean mu + Sigma0' (Sigma + sigma2 I)^-1 (y - mu) at the
// targets. Standard deviations use the exact per-target formula up to 2048
// targets, else sample sd over conditional simulations.
Predictions krige(const ModelParams& params, const GridMask& mask,
                  const Eigen::VectorXd& y, const PredictionRequest& request,
                  int J = 3);

// Conditional draws: kriging mean plus the residual of an unconditional
// simulation kriged on its own observations. Rows are draws.
Eigen::MatrixXd cond_sim(const ModelParams& params, const GridMask& mask,
                         const Eigen::VectorXd& y, const PredictionRequest& request,
                         int J = 3);

}  // namespace gridmrf

#endif
