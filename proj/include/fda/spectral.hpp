#pragma once

#include "fda/image.hpp"
#include "fda/spectrum.hpp"

namespace fda {

/// Real-input 2D DFT of every channel, keeping columns v = 0 .. W/2.
///
/// Unnormalized forward convention:
///   F(u, v) = sum_h sum_w exp(-2 pi i (h u / H + w v / W)) x(h, w)
/// Throws InvalidInput when H < 2 or W < 2.
Spectrum forward_rfft2(const ImageTensor& image);

/// Inverse of forward_rfft2, scaled by 1 / (H W). Conjugate symmetry is
/// imposed: the imaginary parts of self-conjugate bins are ignored, so the
/// result is real by construction.
ImageTensor inverse_rfft2(const Spectrum& spectrum);

/// Amplitude and phase per bin. Phase is atan2(imag, real) in (-pi, pi];
/// a zero bin gets phase 0.
PolarSpectrum decompose(const Spectrum& spectrum);

/// real = A cos P, imag = A sin P. Throws InvalidInput on negative amplitude
/// or mismatched plane sizes.
Spectrum recompose(const PolarSpectrum& polar);

/// Literal O(H^2 W^2) evaluation of the forward DFT in double precision.
/// Shares no code with the fast path; meant for small images.
Spectrum dft2_bruteforce(const ImageTensor& image);

/// Expands the half-spectrum of one channel to the full H x W grid using
/// F(u, W - v) = conj(F((H - u) mod H, v)). Row-major H x W.
std::vector<Complex> full_spectrum(const Spectrum& spectrum, std::size_t channel);

}  // namespace fda
