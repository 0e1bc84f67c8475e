#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fda {

using Complex = std::complex<double>;

/// Half-spectrum of a real H x W x C image: H rows, W/2 + 1 columns, one
/// plane per channel. Planes are stored channel-major, (c, u, v) row-major.
/// The original width is kept so the inverse restores it exactly.
class Spectrum {
public:
  Spectrum() = default;
  Spectrum(std::size_t height, std::size_t full_width, std::size_t channels);

  std::size_t height() const noexcept { return height_; }
  std::size_t full_width() const noexcept { return full_width_; }
  std::size_t half_width() const noexcept { return half_width_; }
  std::size_t channels() const noexcept { return channels_; }
  std::size_t plane_size() const noexcept { return height_ * half_width_; }
  std::size_t size() const noexcept { return data_.size(); }

  Complex& at(std::size_t u, std::size_t v, std::size_t c) noexcept {
    return data_[(c * height_ + u) * half_width_ + v];
  }
  Complex at(std::size_t u, std::size_t v, std::size_t c) const noexcept {
    return data_[(c * height_ + u) * half_width_ + v];
  }

  std::span<Complex> plane(std::size_t c) noexcept {
    return std::span<Complex>(data_).subspan(c * plane_size(), plane_size());
  }
  std::span<const Complex> plane(std::size_t c) const noexcept {
    return std::span<const Complex>(data_).subspan(c * plane_size(), plane_size());
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  bool same_shape(const Spectrum& other) const noexcept {
    return height_ == other.height_ && full_width_ == other.full_width_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
  std::size_t height_ = 0;
  std::size_t full_width_ = 0;
  std::size_t half_width_ = 0;
  std::size_t channels_ = 0;
  std::vector<Complex> data_;
};

/// Amplitude/phase planes of a Spectrum, same layout.
struct PolarSpectrum {
  std::size_t height = 0;
  std::size_t full_width = 0;
  std::size_t channels = 0;
  std::vector<double> amplitude;
  std::vector<double> phase;

  std::size_t half_width() const noexcept { return full_width / 2 + 1; }
};

}  // namespace fda
