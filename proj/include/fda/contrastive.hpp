#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fda {

/// n x d embeddings, row-major, with the softmax temperature they are
/// contrasted at.
class EmbeddingBatch {
public:
  EmbeddingBatch(std::size_t n, std::size_t d, std::vector<double> vectors, double temperature = 0.1);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  double temperature() const noexcept { return temperature_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(vectors_).subspan(i * d_, d_);
  }

private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> vectors_;
  double temperature_;
};

/// a.b / (|a| |b|). Throws InvalidInput on a zero vector or length mismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// NT-Xent over the 2N pool [left; right]. Each anchor's positive is its
/// counterpart in the other batch and its denominator runs over every other
/// pool member. Returns the mean of the 2N per-anchor losses; evaluated with
/// log-sum-exp.
double info_nce_loss(const EmbeddingBatch& left, const EmbeddingBatch& right);

}  // namespace fda
