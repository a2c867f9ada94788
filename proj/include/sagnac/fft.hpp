#pragma once

#include <cstddef>
#include <span>

#include "sagnac/grid.hpp"

namespace sagnac {

/// In-place 1-D complex FFT of fixed length, backed by FFTW.
///
/// forward:  X_k = sum_n x_n exp(-2 pi i k n / N)
/// inverse:  x_n = (1/N) sum_k X_k exp(+2 pi i k n / N)   (normalized)
///
/// Plans are created under a process-wide lock; execution on distinct
/// buffers is safe from multiple threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const { return n_; }
  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace sagnac
