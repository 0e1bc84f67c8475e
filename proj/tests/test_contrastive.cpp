#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fda/contrastive.hpp"
#include "fda/error.hpp"
#include "fda/random.hpp"

using namespace fda;

namespace {

// Literal definition: plain exp sums, no shifting.
double oracle_loss(const EmbeddingBatch& left, const EmbeddingBatch& right) {
  const std::size_t n = left.size();
  auto member = [&](std::size_t k) { return k < n ? left.row(k) : right.row(k - n); };
  auto sim = [](std::span<const double> a, std::span<const double> b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      dot += a[i] * b[i];
      na += a[i] * a[i];
      nb += b[i] * b[i];
    }
    return dot / std::sqrt(na * nb);
  };
  const double tau = left.temperature();
  double total = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const std::size_t pos = i < n ? i + n : i - n;
    double denom = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (j != i) denom += std::exp(sim(member(i), member(j)) / tau);
    }
    total += -std::log(std::exp(sim(member(i), member(pos)) / tau) / denom);
  }
  return total / static_cast<double>(2 * n);
}

EmbeddingBatch random_batch(std::size_t n, std::size_t d, RandomState& rng, double tau = 0.1) {
  std::vector<double> v(n * d);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return EmbeddingBatch(n, d, std::move(v), tau);
}

}  // namespace

TEST_CASE("cosine similarity") {
  const std::vector<double> a{1.0, 2.0, 3.0}, neg{-1.0, -2.0, -3.0}, x{1.0, 0.0}, y{0.0, 1.0};
  CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine_similarity(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(cosine_similarity(x, y)) < 1e-6);
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK_THROWS_AS(cosine_similarity(a, zero), InvalidInput);
  CHECK_THROWS_AS(cosine_similarity(a, x), InvalidInput);
}

TEST_CASE("small-batch closed forms") {
  SUBCASE("orthonormal pairs at tau 0.1") {
    const EmbeddingBatch b(2, 2, {1, 0, 0, 1}, 0.1);
    const double expected = -std::log(std::exp(10.0) / (std::exp(10.0) + 2.0));
    CHECK(info_nce_loss(b, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(info_nce_loss(b, b) == doctest::Approx(oracle_loss(b, b)).epsilon(1e-12));
  }
  SUBCASE("opposite negatives at tau 1") {
    const EmbeddingBatch b(2, 2, {1, 0, -1, 0}, 1.0);
    const double expected = -std::log(std::exp(1.0) / (std::exp(1.0) + 2.0 * std::exp(-1.0)));
    CHECK(info_nce_loss(b, b) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("random batches agree with the direct oracle") {
  RandomState rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 16));
    const auto d = static_cast<std::size_t>(rng.integer(1, 32));
    const double tau = rng.uniform(0.1, 2.0);
    const EmbeddingBatch l = random_batch(n, d, rng, tau), r = random_batch(n, d, rng, tau);
    const double got = info_nce_loss(l, r);
    const double want = oracle_loss(l, r);
    CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("loss is invariant to embedding scale and to a shared permutation") {
  RandomState rng(8);
  const EmbeddingBatch l = random_batch(6, 5, rng), r = random_batch(6, 5, rng);
  const double base = info_nce_loss(l, r);

  auto rows = [](const EmbeddingBatch& b, double scale, const std::vector<std::size_t>& order) {
    std::vector<double> v;
    for (std::size_t i : order) {
      for (double x : b.row(i)) v.push_back(scale * x);
    }
    return EmbeddingBatch(b.size(), b.dim(), std::move(v), b.temperature());
  };
  std::vector<std::size_t> identity(6), shuffled{3, 0, 5, 1, 4, 2};
  std::iota(identity.begin(), identity.end(), 0);
  CHECK(info_nce_loss(rows(l, 7.5, identity), rows(r, 0.01, identity)) == doctest::Approx(base).epsilon(1e-12));
  CHECK(info_nce_loss(rows(l, 1.0, shuffled), rows(r, 1.0, shuffled)) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("aligning positives lowers the loss") {
  RandomState rng(9);
  const EmbeddingBatch l = random_batch(8, 16, rng), r = random_batch(8, 16, rng);
  CHECK(info_nce_loss(l, l) < info_nce_loss(l, r));
}

TEST_CASE("temperature changes values but stays finite, even at extreme similarity ratios") {
  RandomState rng(10);
  for (int i = 0; i < 50; ++i) {
    const EmbeddingBatch l = random_batch(8, 4, rng, 0.1), r = random_batch(8, 4, rng, 0.1);
    std::vector<double> lv(l.row(0).data(), l.row(0).data() + 32), rv(r.row(0).data(), r.row(0).data() + 32);
    const EmbeddingBatch l1(8, 4, lv, 1.0), r1(8, 4, rv, 1.0);
    const double cold = info_nce_loss(l, r), warm = info_nce_loss(l1, r1);
    CHECK(std::isfinite(cold));
    CHECK(std::isfinite(warm));
    CHECK(cold != warm);
  }
  // |sim / tau| up to 50: plain exp would lose precision but must still be finite.
  const EmbeddingBatch l(2, 2, {1, 0, -1, 0}, 0.02);
  const double loss = info_nce_loss(l, l);
  CHECK(std::isfinite(loss));
  CHECK(loss >= 0.0);
  // Tiny temperature: direct exp overflows, log-sum-exp does not.
  const EmbeddingBatch hot(2, 2, {1, 0, 0, 1}, 1e-3);
  CHECK(std::isfinite(info_nce_loss(hot, hot)));
}

TEST_CASE("invalid batches") {
  CHECK_THROWS_AS(EmbeddingBatch(1, 2, {1, 0}), InvalidInput);
  CHECK_THROWS_AS(EmbeddingBatch(2, 0, {}), InvalidInput);
  CHECK_THROWS_AS(EmbeddingBatch(2, 2, {1, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(EmbeddingBatch(2, 2, {1, 0, 0, 1}, 0.0), InvalidInput);
  const EmbeddingBatch a(2, 2, {1, 0, 0, 1}), b(3, 2, {1, 0, 0, 1, 1, 1}), c(2, 2, {1, 0, 0, 1}, 0.5);
  CHECK_THROWS_AS(info_nce_loss(a, b), InvalidInput);
  CHECK_THROWS_AS(info_nce_loss(a, c), InvalidInput);
  const EmbeddingBatch z(2, 2, {0, 0, 0, 1});
  CHECK_THROWS_AS(info_nce_loss(z, a), InvalidInput);
}
