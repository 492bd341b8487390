#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace ekman::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    RealGrid real(n, n);
    ComplexGrid complex(n, n / 2 + 1);
    auto* r = real.data();
    auto* c = reinterpret_cast<fftw_complex*>(complex.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans{fftw_plan_dft_r2c_2d(n, n, r, c, flags), fftw_plan_dft_c2r_2d(n, n, c, r, flags)};
    if (plans.forward == nullptr || plans.inverse == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
    return plans_.emplace(n, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

ComplexGrid forward_fft(const RealGrid& values) {
  const int n = static_cast<int>(values.rows());
  const auto& plans = cache().get(n);
  RealGrid in = values;
  ComplexGrid out(n, n / 2 + 1);
  fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
  out /= static_cast<double>(n) * n;
  return out;
}

RealGrid inverse_fft(const ComplexGrid& spectrum, int n) {
  const auto& plans = cache().get(n);
  ComplexGrid in = spectrum;  // c2r overwrites its input
  RealGrid out(n, n);
  fftw_execute_dft_c2r(plans.inverse, reinterpret_cast<fftw_complex*>(in.data()), out.data());
  return out;
}

}  // namespace ekman::detail
