#include "sagnac/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "sagnac/error.hpp"

namespace sagnac {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  // Plans are built against a scratch buffer with FFTW_UNALIGNED so that
  // fftw_execute_dft can be used on any std::vector<Complex> storage.
  std::vector<Complex> scratch(n);
  const int len = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()),
                                   as_fftw(scratch.data()), FFTW_FORWARD, flags);
  inverse_plan_ = fftw_plan_dft_1d(len, as_fftw(scratch.data()),
                                   as_fftw(scratch.data()), FFTW_BACKWARD, flags);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    release();
    throw SolverError("fft: plan creation failed");
  }
}

Fft::~Fft() { release(); }

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), forward_plan_(other.forward_plan_), inverse_plan_(other.inverse_plan_) {
  other.forward_plan_ = nullptr;
  other.inverse_plan_ = nullptr;
}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    forward_plan_ = other.forward_plan_;
    inverse_plan_ = other.inverse_plan_;
    other.forward_plan_ = nullptr;
    other.inverse_plan_ = nullptr;
  }
  return *this;
}

void Fft::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  forward_plan_ = nullptr;
  inverse_plan_ = nullptr;
}

void Fft::forward(std::span<Complex> data) const {
  if (data.size() != n_) throw ValidationError("fft: buffer length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data.data()),
                   as_fftw(data.data()));
}

void Fft::inverse(std::span<Complex> data) const {
  if (data.size() != n_) throw ValidationError("fft: buffer length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data.data()),
                   as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

}  // namespace sagnac
