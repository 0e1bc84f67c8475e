#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fda/spectrum.hpp"

namespace fda {

/// Precomputed mixed-radix plan for a complex 1D FFT of fixed length.
///
/// Lengths factor into radix-4, 2, 3 and 5 butterflies; any remaining odd
/// factor uses a paired O(p^2 / 4) butterfly, so every length is supported.
/// Plans are immutable after construction and may be shared across threads.
class FftPlan {
public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  /// out[k] = sum_j in[j] exp(-2 pi i j k / n). in and out must not alias.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;

  /// out[j] = sum_k in[k] exp(+2 pi i j k / n), unscaled.
  void backward(std::span<const Complex> in, std::span<Complex> out) const;

  /// Transforms `count` sequences in place. Element i of sequence j lives at
  /// re[i * stride + j], im[i * stride + j]; the work buffers must hold
  /// n * stride values each. Same conventions as forward()/backward(); the
  /// inner loops run across the batch, so they vectorize.
  void forward_batch(double* re, double* im, std::size_t stride, std::size_t count, double* work_re,
                     double* work_im) const;
  void backward_batch(double* re, double* im, std::size_t stride, std::size_t count, double* work_re,
                      double* work_im) const;

  /// One self-sorting (Stockham) pass: radix, length already combined, and
  /// per-direction twiddles w^{rk} (r = 1..radix-1, k < span) followed by the
  /// radix's own DFT coefficients.
  struct BatchStage {
    std::size_t radix;
    std::size_t span;
    std::vector<double> coefficients[2];
  };

private:
  void transform(std::span<const Complex> in, std::span<Complex> out,
                 const std::vector<Complex>& twiddles, bool inverse) const;

  std::size_t n_;
  // (radix, remaining length) per stage.
  std::vector<std::pair<std::size_t, std::size_t>> stages_;
  std::vector<Complex> forward_twiddles_;
  std::vector<Complex> backward_twiddles_;
  std::vector<BatchStage> batch_stages_;
};

}  // namespace fda
