#ifndef GRIDMRF_LIKELIHOOD_HPP
#define GRIDMRF_LIKELIHOOD_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "gridmrf/grid.hpp"
#include "gridmrf/precision.hpp"

namespace gridmrf {

// Largest m_n the dense corner machinery accepts before recommending the
// imputation route.
inline constexpr int kDefaultMnCap = 20000;

struct LoglikBreakdown {
  double loglik = 0.0;    // -(n/2) log 2pi - logdet/2 - quadform/2
  double logdet = 0.0;    // log det of the covariance of Y
  double quadform = 0.0;  // (Y-mu)' (Sigma + sigma2 I)^-1 (Y-mu)
  int n_obs = 0;
  std::string method;
  double wall_time = 0.0;  // seconds
};

// Handle on a factorized covariance Sigma + sigma2 I over the observations.
// Input/output vectors are in observation (row-major) order. Immutable after
// construction; concurrent solves are safe.
class CovSolver {
 public:
  virtual ~CovSolver() = default;
  virtual double logdet() const = 0;
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& y) const = 0;
  // y' (Sigma + sigma2 I)^-1 y; default goes through solve().
  virtual double quadform(const Eigen::VectorXd& y) const;
};

// Builds the appropriate exact machinery: the no-nugget partition solver for
// sigma2 = 0, otherwise the memory-lean Schur path (or the full-Q path when
// full_q is set).
std::unique_ptr<CovSolver> make_exact_solver(const ModelParams& params,
                                             const GridMask& mask,
                                             const PartitionIndex& index, int J,
                                             bool full_q = false,
                                             int mn_cap = kDefaultMnCap);

// Exact loglikelihood, no nugget: logdet(Sigma) = logdet(Sigma11) - logdet(Q22)
// and the quadratic form through the three-factor inverse.
LoglikBreakdown loglik_exact(const ModelParams& params, const GridMask& mask,
                             const Eigen::VectorXd& y, int J = 3);

// Exact loglikelihood with nugget through the full precision (sparse blocks
// plus dense corner), factoring Q and I + sigma2 Q.
LoglikBreakdown loglik_nugget_fullQ(const ModelParams& params, const GridMask& mask,
                                    const Eigen::VectorXd& y, int J = 3);

// Exact loglikelihood with nugget without dense matrices beyond m_n x m_n,
// via the Schur complement of A22 = (I + sigma2 Q)22.
LoglikBreakdown loglik_nugget_lean(const ModelParams& params, const GridMask& mask,
                                   const Eigen::VectorXd& y, int J = 3);

// Loglikelihood computed as if the adjusted sparse precision were exact.
// Defined for sigma2 = 0 only.
LoglikBreakdown loglik_approx(const ModelParams& params, const GridMask& mask,
                              const Eigen::VectorXd& y, ApproxScheme scheme);

// Sum of exact dense Gaussian loglikelihoods over a partition of the
// observations; cross-block dependence ignored. Blocks hold observation
// indices; each must stay within the dense guard (4096 cells).
LoglikBreakdown loglik_indblocks(const ModelParams& params, const GridMask& mask,
                                 const Eigen::VectorXd& y,
                                 const std::vector<std::vector<int>>& blocks,
                                 int J = 3);

// Tiling of the observed cells into contiguous tile_rows x tile_cols blocks.
std::vector<std::vector<int>> tile_blocks(const GridMask& mask, int tile_rows,
                                          int tile_cols);

}  // namespace gridmrf

#endif
