#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace gridmrf::detail {

namespace {
std::mutex planner_mutex;  // FFTW planner is not thread-safe
}

void fft2(Eigen::ArrayXXcd& a, int sign) {
  auto* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    // column-major (t1, t2) in memory equals row-major (t2, t1)
    plan = fftw_plan_dft_2d(static_cast<int>(a.cols()), static_cast<int>(a.rows()), buf,
                            buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace gridmrf::detail
