#include "fda/contrastive.hpp"

#include <algorithm>
#include <cmath>

#include "fda/error.hpp"

namespace fda {

EmbeddingBatch::EmbeddingBatch(std::size_t n, std::size_t d, std::vector<double> vectors,
                               double temperature)
    : n_(n), d_(d), vectors_(std::move(vectors)), temperature_(temperature) {
  require(n >= 2, "EmbeddingBatch: need at least two samples");
  require(d >= 1, "EmbeddingBatch: dimension must be positive");
  require(vectors_.size() == n * d, "EmbeddingBatch: vector data must be n * d long");
  require(temperature > 0.0 && std::isfinite(temperature), "EmbeddingBatch: temperature must be positive");
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "cosine_similarity: length mismatch");
  double dot = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  require(aa > 0.0 && bb > 0.0, "cosine_similarity: zero vector");
  return std::clamp(dot / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

double info_nce_loss(const EmbeddingBatch& left, const EmbeddingBatch& right) {
  require(left.size() == right.size() && left.dim() == right.dim(),
          "info_nce_loss: left and right batches must have the same shape");
  require(left.temperature() == right.temperature(), "info_nce_loss: temperatures differ");
  const std::size_t n = left.size();
  const std::size_t pool = 2 * n;
  const double tau = left.temperature();
  auto member = [&](std::size_t i) { return i < n ? left.row(i) : right.row(i - n); };

  std::vector<double> logits(pool * pool);
  for (std::size_t i = 0; i < pool; ++i) {
    for (std::size_t j = i; j < pool; ++j) {
      const double s = cosine_similarity(member(i), member(j)) / tau;
      logits[i * pool + j] = s;
      logits[j * pool + i] = s;
    }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < pool; ++i) {
    const std::size_t positive = (i + n) % pool;
    double peak = -INFINITY;
    for (std::size_t j = 0; j < pool; ++j) {
      if (j != i) peak = std::max(peak, logits[i * pool + j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < pool; ++j) {
      if (j != i) sum += std::exp(logits[i * pool + j] - peak);
    }
    total += peak + std::log(sum) - logits[i * pool + positive];
  }
  return total / static_cast<double>(pool);
}

}  // namespace fda
