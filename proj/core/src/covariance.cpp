#include "gridmrf/covariance.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace gridmrf {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

template <typename SpectrumFn>
CovarianceTable build_table(SpectrumFn&& f, int n1, int n2, int J, int min_torus,
                            ModelParams model) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  if (J < 1) throw std::invalid_argument("oversampling J must be >= 1");
  CovarianceTable table;
  table.n1 = n1;
  table.n2 = n2;
  table.J = J;
  table.t1 = std::max(n1 * J, min_torus);
  table.t2 = std::max(n2 * J, min_torus);
  table.model = model;

  table.spectrum.resize(table.t1, table.t2);
  for (int j2 = 0; j2 < table.t2; ++j2) {
    double w2 = two_pi * j2 / table.t2;
    for (int j1 = 0; j1 < table.t1; ++j1) {
      double w1 = two_pi * j1 / table.t1;
      double v = f(w1, w2);
      if (!std::isfinite(v)) throw numerical_error("singular spectrum sample");
      table.spectrum(j1, j2) = v;
    }
  }

  Eigen::ArrayXXcd buf = table.spectrum.cast<std::complex<double>>();
  detail::fft2(buf, +1);
  double scale = 1.0 / (static_cast<double>(table.t1) * table.t2);
  table.values = buf.real() * scale;
  double imag_residue = buf.imag().abs().maxCoeff() * scale;
  if (imag_residue >= 1e-10 * table.values(0, 0))
    throw numerical_error("covariance table has nonnegligible imaginary residue");
  return table;
}

int pad_floor(int n1, int n2) {
  return (n1 < 20 || n2 < 20) ? kSmallGridTorusFloor : 1;
}

void check_location(const CovarianceTable& table, const Location& loc) {
  if (loc.first < 0 || loc.first >= table.t1 || loc.second < 0 || loc.second >= table.t2)
    throw std::invalid_argument("location outside the grid rectangle");
}

}  // namespace

CovarianceTable covariance_table(const ModelParams& params, int n1, int n2, int J,
                                 int min_torus) {
  params.validate();
  return build_table(
      [&](double w1, double w2) { return spectral_density(params, w1, w2); }, n1, n2, J,
      min_torus, params);
}

CovarianceTable covariance_table(const Stencil& stencil, int n1, int n2, int J,
                                 int min_torus) {
  stencil.validate();
  return build_table(
      [&](double w1, double w2) {
        double d = inverse_spectrum(stencil, w1, w2);
        return 1.0 / d;
      },
      n1, n2, J, min_torus, ModelParams{});
}

CovarianceTable table_for_grid(const ModelParams& params, int n1, int n2, int J) {
  return covariance_table(params, n1, n2, J, pad_floor(n1, n2));
}

CovarianceTable table_for_grid(const Stencil& stencil, int n1, int n2, int J) {
  return covariance_table(stencil, n1, n2, J, pad_floor(n1, n2));
}

Eigen::VectorXd circ_matvec(const CovarianceTable& table, const Eigen::VectorXd& v,
                            std::span<const Location> sources,
                            std::span<const Location> targets) {
  if (v.size() != static_cast<Eigen::Index>(sources.size()))
    throw std::invalid_argument("vector length does not match source count");
  Eigen::ArrayXXcd buf = Eigen::ArrayXXcd::Zero(table.t1, table.t2);
  for (size_t k = 0; k < sources.size(); ++k) {
    check_location(table, sources[k]);
    buf(sources[k].first, sources[k].second) += v[static_cast<Eigen::Index>(k)];
  }
  detail::fft2(buf, -1);
  buf *= table.spectrum;
  detail::fft2(buf, +1);
  double scale = 1.0 / (static_cast<double>(table.t1) * table.t2);
  Eigen::VectorXd out(static_cast<Eigen::Index>(targets.size()));
  for (size_t k = 0; k < targets.size(); ++k) {
    check_location(table, targets[k]);
    out[static_cast<Eigen::Index>(k)] =
        buf(targets[k].first, targets[k].second).real() * scale;
  }
  return out;
}

std::pair<Eigen::ArrayXXd, Eigen::ArrayXXd> sample_torus_fields(
    const CovarianceTable& table, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::ArrayXXcd buf(table.t1, table.t2);
  for (int j2 = 0; j2 < table.t2; ++j2) {
    for (int j1 = 0; j1 < table.t1; ++j1) {
      double f = table.spectrum(j1, j2);
      if (f < 0.0) throw numerical_error("nonpositive spectrum sample");
      double a = std::sqrt(f);
      double re = gauss(rng), im = gauss(rng);
      buf(j1, j2) = std::complex<double>(a * re, a * im);
    }
  }
  detail::fft2(buf, -1);
  double scale = 1.0 / std::sqrt(static_cast<double>(table.t1) * table.t2);
  return {buf.real() * scale, buf.imag() * scale};
}

Eigen::VectorXd unconditional_sim(const ModelParams& params, const GridMask& mask,
                                  int J, std::uint64_t seed) {
  params.validate();
  if (J < 2) throw std::invalid_argument("simulation requires J >= 2");
  CovarianceTable table = table_for_grid(params, mask.n1, mask.n2, J);
  std::mt19937_64 rng(seed);
  auto [field, unused] = sample_torus_fields(table, rng);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double sd_nugget = std::sqrt(params.sigma2);
  Eigen::VectorXd out(mask.n_obs());
  for (int i = 0; i < mask.n_obs(); ++i) {
    auto [r, c] = mask.coord(i);
    out[i] = params.mu + field(r, c);
    if (params.sigma2 > 0.0) out[i] += sd_nugget * gauss(rng);
  }
  return out;
}

}  // namespace gridmrf
