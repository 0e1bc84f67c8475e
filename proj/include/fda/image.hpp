#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fda {

/// H x W x C raster of real samples, interleaved (h, w, c) row-major.
/// Nominal channel range is [0, 1].
class ImageTensor {
public:
  ImageTensor() = default;
  ImageTensor(std::size_t height, std::size_t width, std::size_t channels, double fill = 0.0);
  ImageTensor(std::size_t height, std::size_t width, std::size_t channels, std::vector<double> data);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& at(std::size_t h, std::size_t w, std::size_t c) noexcept {
    return data_[(h * width_ + w) * channels_ + c];
  }
  double at(std::size_t h, std::size_t w, std::size_t c) const noexcept {
    return data_[(h * width_ + w) * channels_ + c];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool same_shape(const ImageTensor& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }

  void clamp01() noexcept;

  friend bool operator==(const ImageTensor&, const ImageTensor&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> data_;
};

}  // namespace fda
