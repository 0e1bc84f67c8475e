#include "fda/image.hpp"

#include <algorithm>

#include "fda/error.hpp"

namespace fda {

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::size_t channels, double fill)
    : height_(height), width_(width), channels_(channels), data_(height * width * channels, fill) {
  require(height > 0 && width > 0 && channels > 0, "ImageTensor: dimensions must be positive");
}

ImageTensor::ImageTensor(std::size_t height, std::size_t width, std::size_t channels,
                         std::vector<double> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
  require(height > 0 && width > 0 && channels > 0, "ImageTensor: dimensions must be positive");
  require(data_.size() == height * width * channels,
          "ImageTensor: data length must equal height * width * channels");
}

void ImageTensor::clamp01() noexcept {
  for (double& v : data_) v = std::clamp(v, 0.0, 1.0);
}

}  // namespace fda
