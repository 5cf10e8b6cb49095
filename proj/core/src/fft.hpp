#ifndef GRIDMRF_SRC_FFT_HPP
#define GRIDMRF_SRC_FFT_HPP

#include <Eigen/Dense>

namespace gridmrf::detail {

// In-place unnormalized 2-D DFT of a column-major complex array.
// sign = -1 forward, +1 backward.
void fft2(Eigen::ArrayXXcd& a, int sign);

}  // namespace gridmrf::detail

#endif
