#pragma once

#include <filesystem>
#include <stdexcept>

#include "fda/image.hpp"

namespace fda {

class ImageIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Decodes an 8-bit PNG or JPEG into an RGB tensor in [0, 1] (value / 255).
/// Gray inputs are replicated to three channels and alpha is dropped.
ImageTensor read_image(const std::filesystem::path& path);

/// Writes a 1- or 3-channel image as 8-bit PNG, rounding clamp(v) * 255.
void write_png(const std::filesystem::path& path, const ImageTensor& image);

/// Decoder choice is by extension: .png, .jpg, .jpeg (case-insensitive).
bool is_supported_image(const std::filesystem::path& path);

}  // namespace fda
