#ifndef GRIDMRF_TYPES_HPP
#define GRIDMRF_TYPES_HPP

#include <stdexcept>
#include <string>

namespace gridmrf {

inline constexpr const char* kVersion = "0.1.0";

// Thrown when a factorization or spectrum evaluation breaks down.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a problem exceeds a configured size cap.
struct size_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of the lattice Matern-type model family:
// spectral density tau^-2 (kappa^2 + 4 - 2cos w1 - 2cos w2)^(-nu-1),
// plus nugget variance sigma2 and constant mean mu.
struct ModelParams {
  double tau = 1.0;     // precision scale, > 0
  double kappa = 1.0;   // inverse range, > 0
  int nu = 0;           // integer smoothness, >= 0
  double sigma2 = 0.0;  // nugget variance, >= 0
  double mu = 0.0;      // constant mean

  void validate() const {
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative");
    if (nu < 0) throw std::invalid_argument("nu must be a nonnegative integer");
    if (sigma2 < 0.0) throw std::invalid_argument("sigma2 must be nonnegative");
  }
};

}  // namespace gridmrf

#endif
