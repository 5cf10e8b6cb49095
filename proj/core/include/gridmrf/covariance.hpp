#ifndef GRIDMRF_COVARIANCE_HPP
#define GRIDMRF_COVARIANCE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gridmrf/grid.hpp"
#include "gridmrf/stencil.hpp"

namespace gridmrf {

// Lattice covariances K at every lag of the embedding torus, computed by
// sampling the spectral density on an oversampled frequency grid and one
// inverse FFT. Torus dims are (n1*J, n2*J), optionally padded up to a floor
// for small grids (the wrapped-covariance error shrinks with torus size).
struct CovarianceTable {
  int n1 = 0, n2 = 0;  // grid rectangle the table serves
  int J = 1;           // oversampling factor
  int t1 = 0, t2 = 0;  // torus dims
  Eigen::ArrayXXd values;    // t1 x t2, K at lag (h1, h2)
  Eigen::ArrayXXd spectrum;  // spectral density at the torus frequencies
  ModelParams model;

  double at(int h1, int h2) const {
    h1 %= t1; if (h1 < 0) h1 += t1;
    h2 %= t2; if (h2 < 0) h2 += t2;
    return values(h1, h2);
  }
};

// Torus padding floor used for grids smaller than 20x20.
inline constexpr int kSmallGridTorusFloor = 512;

// K(h; J, n) = (t1 t2)^-1 sum_j f(w_j) exp(i w_j . h) over the torus
// frequency grid of size (t1, t2), t_i = max(n_i*J, min_torus).
CovarianceTable covariance_table(const ModelParams& params, int n1, int n2, int J,
                                 int min_torus = 1);
// Same, with the spectrum 1 / sum_h eta(h) e^{i w.h} taken from a stencil.
CovarianceTable covariance_table(const Stencil& stencil, int n1, int n2, int J,
                                 int min_torus = 1);

// Table with the small-grid padding rule applied (floor 512 when either grid
// dim is below 20).
CovarianceTable table_for_grid(const ModelParams& params, int n1, int n2, int J);
CovarianceTable table_for_grid(const Stencil& stencil, int n1, int n2, int J);

using Location = std::pair<int, int>;

// For each target x, sum over sources y of K(x - y) v(y), by zero-padding v
// onto the torus and one FFT multiply. Exact w.r.t. the table's K values.
Eigen::VectorXd circ_matvec(const CovarianceTable& table, const Eigen::VectorXd& v,
                            std::span<const Location> sources,
                            std::span<const Location> targets);

// Two independent zero-mean Gaussian fields on the torus with covariance K,
// drawn by the spectral method (one complex draw per frequency).
std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> sample_torus_fields(
    const CovarianceTable& table, std::mt19937_64& rng);

// Sample of the torus-wrapped process at the observed cells, plus mean and
// (when sigma2 > 0) nugget noise. Requires J >= 2.
Eigen::VectorXd unconditional_sim(const ModelParams& params, const GridMask& mask,
                                  int J, std::uint64_t seed);

}  // namespace gridmrf

#endif
