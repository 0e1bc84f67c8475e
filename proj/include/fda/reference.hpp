#pragma once

#include <vector>

#include "fda/fda_ops.hpp"
#include "fda/image.hpp"
#include "fda/image_ops.hpp"
#include "fda/spectrum.hpp"

// Serial, unoptimized counterparts of the OpenMP kernels. They evaluate each
// definition literally and share no inner loops with the fast paths, so the
// parity tests and benchmarks compare two independent routes.
namespace fda::reference {

/// Literal inverse DFT of the Hermitian completion of each channel.
ImageTensor idft2_bruteforce(const Spectrum& spectrum);

/// Direct 2D convolution with the outer-product kernel, same padding rule.
ImageTensor gaussian_blur_direct(const ImageTensor& image, double sigma, std::size_t kernel_size);

/// Per-pixel 4x4 bicubic evaluation.
ImageTensor resized_crop_direct(const ImageTensor& image, const CropRect& rect, std::size_t out_height,
                                std::size_t out_width);

/// min(1, max_j G_j) evaluated with one exp per component and bin.
std::vector<double> gaussian_mixture_mask_direct(std::size_t height, std::size_t half_width,
                                                 const GaussianMixtureSample& sample);

}  // namespace fda::reference
