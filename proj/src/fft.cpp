#include "fda/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fda/error.hpp"

namespace fda {
namespace {

// std::complex multiplication goes through the Annex G NaN-recovery path
// unless -fcx-limited-range is in effect; the butterflies only see finite
// values so the plain formula is used.
inline Complex cmul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct Kernel {
  const std::vector<std::pair<std::size_t, std::size_t>>& stages;
  const Complex* tw;
  std::size_t n;
  bool inverse;

  void bfly2(Complex* f, std::size_t fstride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex t = cmul(f[k + m], tw[k * fstride]);
      f[k + m] = f[k] - t;
      f[k] += t;
    }
  }

  void bfly3(Complex* f, std::size_t fstride, std::size_t m) const {
    const double epi3 = tw[fstride * m].imag();
    for (std::size_t k = 0; k < m; ++k) {
      const Complex s1 = cmul(f[k + m], tw[k * fstride]);
      const Complex s2 = cmul(f[k + 2 * m], tw[2 * k * fstride]);
      const Complex s3 = s1 + s2;
      const Complex s0 = (s1 - s2) * epi3;
      const Complex mid = f[k] - 0.5 * s3;
      f[k] += s3;
      f[k + 2 * m] = {mid.real() + s0.imag(), mid.imag() - s0.real()};
      f[k + m] = {mid.real() - s0.imag(), mid.imag() + s0.real()};
    }
  }

  void bfly4(Complex* f, std::size_t fstride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex s0 = cmul(f[k + m], tw[k * fstride]);
      const Complex s1 = cmul(f[k + 2 * m], tw[2 * k * fstride]);
      const Complex s2 = cmul(f[k + 3 * m], tw[3 * k * fstride]);
      const Complex s5 = f[k] - s1;
      f[k] += s1;
      const Complex s3 = s0 + s2;
      const Complex s4 = s0 - s2;
      f[k + 2 * m] = f[k] - s3;
      f[k] += s3;
      if (inverse) {
        f[k + m] = {s5.real() - s4.imag(), s5.imag() + s4.real()};
        f[k + 3 * m] = {s5.real() + s4.imag(), s5.imag() - s4.real()};
      } else {
        f[k + m] = {s5.real() + s4.imag(), s5.imag() - s4.real()};
        f[k + 3 * m] = {s5.real() - s4.imag(), s5.imag() + s4.real()};
      }
    }
  }

  void bfly5(Complex* f, std::size_t fstride, std::size_t m) const {
    const Complex ya = tw[fstride * m];
    const Complex yb = tw[fstride * 2 * m];
    Complex* f0 = f;
    Complex* f1 = f + m;
    Complex* f2 = f + 2 * m;
    Complex* f3 = f + 3 * m;
    Complex* f4 = f + 4 * m;
    for (std::size_t u = 0; u < m; ++u) {
      const Complex s0 = f0[u];
      const Complex s1 = cmul(f1[u], tw[u * fstride]);
      const Complex s2 = cmul(f2[u], tw[2 * u * fstride]);
      const Complex s3 = cmul(f3[u], tw[3 * u * fstride]);
      const Complex s4 = cmul(f4[u], tw[4 * u * fstride]);
      const Complex s7 = s1 + s4;
      const Complex s10 = s1 - s4;
      const Complex s8 = s2 + s3;
      const Complex s9 = s2 - s3;
      f0[u] = s0 + s7 + s8;
      const Complex s5{s0.real() + s7.real() * ya.real() + s8.real() * yb.real(),
                       s0.imag() + s7.imag() * ya.real() + s8.imag() * yb.real()};
      const Complex s6{s10.imag() * ya.imag() + s9.imag() * yb.imag(),
                       -(s10.real() * ya.imag() + s9.real() * yb.imag())};
      f1[u] = s5 - s6;
      f4[u] = s5 + s6;
      const Complex s11{s0.real() + s7.real() * yb.real() + s8.real() * ya.real(),
                        s0.imag() + s7.imag() * yb.real() + s8.imag() * ya.real()};
      const Complex s12{-s10.imag() * yb.imag() + s9.imag() * ya.imag(),
                        s10.real() * yb.imag() - s9.real() * ya.imag()};
      f2[u] = s11 + s12;
      f3[u] = s11 - s12;
    }
  }

  // Any odd radix. Inputs q and p - q are paired so that each output pair
  // (k, p - k) shares one set of real-coefficient products:
  //   X_k     = s_0 + sum_q (s_q + s_{p-q}) Re w^{qk} + i (s_q - s_{p-q}) Im w^{qk}
  //   X_{p-k} = same with the imaginary term negated.
  void bfly_odd(Complex* f, std::size_t fstride, std::size_t m, std::size_t p) const {
    // Plain pairs: std::complex arrays would be zero-filled on every call.
    struct Pair {
      double re, im;
    };
    const std::size_t h = p / 2;
    constexpr std::size_t kStack = 16;
    Pair a_stack[kStack], b_stack[kStack], w_stack[kStack * kStack];
    std::vector<Pair> heap;
    Pair *a = a_stack, *b = b_stack, *w = w_stack;
    if (h > kStack) {
      heap.resize(2 * h + h * h);
      a = heap.data();
      b = a + h;
      w = b + h;
    }
    // w[(q-1) h + (k-1)] = w^{qk}
    for (std::size_t q = 1; q <= h; ++q) {
      for (std::size_t k = 1; k <= h; ++k) {
        const Complex z = tw[fstride * m * ((q * k) % p)];
        w[(q - 1) * h + (k - 1)] = {z.real(), z.imag()};
      }
    }
    for (std::size_t u = 0; u < m; ++u) {
      const Complex s0 = f[u];
      double dr = s0.real(), di = s0.imag();
      for (std::size_t q = 1; q <= h; ++q) {
        const Complex lo = cmul(f[u + q * m], tw[q * u * fstride]);
        const Complex hi = cmul(f[u + (p - q) * m], tw[(p - q) * u * fstride]);
        a[q - 1] = {lo.real() + hi.real(), lo.imag() + hi.imag()};
        b[q - 1] = {lo.real() - hi.real(), lo.imag() - hi.imag()};
        dr += a[q - 1].re;
        di += a[q - 1].im;
      }
      f[u] = {dr, di};
      for (std::size_t k = 1; k <= h; ++k) {
        double rr = s0.real(), ri = s0.imag(), tr = 0.0, ti = 0.0;
        for (std::size_t q = 0; q < h; ++q) {
          const Pair wk = w[q * h + (k - 1)];
          rr += a[q].re * wk.re;
          ri += a[q].im * wk.re;
          tr -= b[q].im * wk.im;
          ti += b[q].re * wk.im;
        }
        f[u + k * m] = {rr + tr, ri + ti};
        f[u + (p - k) * m] = {rr - tr, ri - ti};
      }
    }
  }

  void work(Complex* out, const Complex* in, std::size_t fstride, std::size_t stage) const {
    const auto [p, m] = stages[stage];
    Complex* const begin = out;
    Complex* const end = out + p * m;
    if (m == 1) {
      for (; out != end; ++out, in += fstride) *out = *in;
    } else {
      for (; out != end; out += m, in += fstride) work(out, in, fstride * p, stage + 1);
    }
    switch (p) {
      case 2: bfly2(begin, fstride, m); break;
      case 3: bfly3(begin, fstride, m); break;
      case 4: bfly4(begin, fstride, m); break;
      case 5: bfly5(begin, fstride, m); break;
      default: bfly_odd(begin, fstride, m, p); break;
    }
  }
};


// ---------------------------------------------------------------------------
// Batched Stockham passes. Each pass reads `in` and writes `out`; every
// butterfly runs across the `count` lanes of a row, which is the vectorized
// dimension. No fused multiply-add is ever emitted, so every clone below
// produces the same bits.

struct Lanes {
  const double* __restrict re;
  const double* __restrict im;
};

struct OutLanes {
  double* __restrict re;
  double* __restrict im;
};

[[gnu::always_inline]] inline void pass_radix2(const FftPlan::BatchStage& st, std::size_t n, const double* tw,
                                               Lanes in, OutLanes out, std::size_t stride, std::size_t count) {
  const std::size_t m = n / 2;
  for (std::size_t jj = 0; jj < m; ++jj) {
    const std::size_t k = jj % st.span;
    const std::size_t base = (jj / st.span) * st.span * 2 + k;
    const double w1r = tw[2 * k], w1i = tw[2 * k + 1];
    const double* __restrict a_re = in.re + jj * stride;
    const double* __restrict a_im = in.im + jj * stride;
    const double* __restrict b_re = in.re + (jj + m) * stride;
    const double* __restrict b_im = in.im + (jj + m) * stride;
    double* __restrict o0r = out.re + base * stride;
    double* __restrict o0i = out.im + base * stride;
    double* __restrict o1r = out.re + (base + st.span) * stride;
    double* __restrict o1i = out.im + (base + st.span) * stride;
    for (std::size_t j = 0; j < count; ++j) {
      const double xr = b_re[j] * w1r - b_im[j] * w1i;
      const double xi = b_re[j] * w1i + b_im[j] * w1r;
      o0r[j] = a_re[j] + xr;
      o0i[j] = a_im[j] + xi;
      o1r[j] = a_re[j] - xr;
      o1i[j] = a_im[j] - xi;
    }
  }
}

template <bool Inverse>
[[gnu::always_inline]] inline void pass_radix4(const FftPlan::BatchStage& st, std::size_t n, const double* tw,
                                               Lanes in, OutLanes out, std::size_t stride, std::size_t count) {
  const std::size_t m = n / 4;
  for (std::size_t jj = 0; jj < m; ++jj) {
    const std::size_t k = jj % st.span;
    const std::size_t base = (jj / st.span) * st.span * 4 + k;
    const double* w = tw + 6 * k;
    const double w1r = w[0], w1i = w[1], w2r = w[2], w2i = w[3], w3r = w[4], w3i = w[5];
    const double* __restrict r0 = in.re + jj * stride;
    const double* __restrict i0 = in.im + jj * stride;
    const double* __restrict r1 = in.re + (jj + m) * stride;
    const double* __restrict i1 = in.im + (jj + m) * stride;
    const double* __restrict r2 = in.re + (jj + 2 * m) * stride;
    const double* __restrict i2 = in.im + (jj + 2 * m) * stride;
    const double* __restrict r3 = in.re + (jj + 3 * m) * stride;
    const double* __restrict i3 = in.im + (jj + 3 * m) * stride;
    double* __restrict o0r = out.re + base * stride;
    double* __restrict o0i = out.im + base * stride;
    double* __restrict o1r = out.re + (base + st.span) * stride;
    double* __restrict o1i = out.im + (base + st.span) * stride;
    double* __restrict o2r = out.re + (base + 2 * st.span) * stride;
    double* __restrict o2i = out.im + (base + 2 * st.span) * stride;
    double* __restrict o3r = out.re + (base + 3 * st.span) * stride;
    double* __restrict o3i = out.im + (base + 3 * st.span) * stride;
    for (std::size_t j = 0; j < count; ++j) {
      const double x1r = r1[j] * w1r - i1[j] * w1i, x1i = r1[j] * w1i + i1[j] * w1r;
      const double x2r = r2[j] * w2r - i2[j] * w2i, x2i = r2[j] * w2i + i2[j] * w2r;
      const double x3r = r3[j] * w3r - i3[j] * w3i, x3i = r3[j] * w3i + i3[j] * w3r;
      const double t0r = r0[j] + x2r, t0i = i0[j] + x2i;
      const double t1r = r0[j] - x2r, t1i = i0[j] - x2i;
      const double t2r = x1r + x3r, t2i = x1i + x3i;
      const double t3r = x1r - x3r, t3i = x1i - x3i;
      o0r[j] = t0r + t2r;
      o0i[j] = t0i + t2i;
      o2r[j] = t0r - t2r;
      o2i[j] = t0i - t2i;
      if constexpr (Inverse) {  // X1 = t1 + i t3
        o1r[j] = t1r - t3i;
        o1i[j] = t1i + t3r;
        o3r[j] = t1r + t3i;
        o3i[j] = t1i - t3r;
      } else {  // X1 = t1 - i t3
        o1r[j] = t1r + t3i;
        o1i[j] = t1i - t3r;
        o3r[j] = t1r - t3i;
        o3i[j] = t1i + t3r;
      }
    }
  }
}

// Odd radix R (compile-time when R > 0, else st.radix). Same pairing as
// Kernel::bfly_odd.
template <std::size_t R>
[[gnu::always_inline]] inline void pass_odd(const FftPlan::BatchStage& st, std::size_t n, const double* tw,
                                            const double* coef, Lanes in, OutLanes out, std::size_t stride,
                                            std::size_t count) {
  const std::size_t radix = R > 0 ? R : st.radix;
  const std::size_t h = radix / 2;
  const std::size_t m = n / radix;
  constexpr std::size_t kFixed = R > 0 ? R : 1;
  double fixed_re[kFixed], fixed_im[kFixed];
  std::vector<double> heap(R > 0 ? 0 : 2 * radix);
  double* xr = R > 0 ? fixed_re : heap.data();
  double* xi = R > 0 ? fixed_im : heap.data() + radix;
  for (std::size_t jj = 0; jj < m; ++jj) {
    const std::size_t k = jj % st.span;
    const std::size_t base = (jj / st.span) * st.span * radix + k;
    const double* w = tw + 2 * (radix - 1) * k;
    for (std::size_t j = 0; j < count; ++j) {
      xr[0] = in.re[jj * stride + j];
      xi[0] = in.im[jj * stride + j];
      for (std::size_t r = 1; r < radix; ++r) {
        const double a = in.re[(jj + r * m) * stride + j], b = in.im[(jj + r * m) * stride + j];
        xr[r] = a * w[2 * (r - 1)] - b * w[2 * (r - 1) + 1];
        xi[r] = a * w[2 * (r - 1) + 1] + b * w[2 * (r - 1)];
      }
      double dr = xr[0], di = xi[0];
      for (std::size_t q = 1; q <= h; ++q) {
        dr += xr[q] + xr[radix - q];
        di += xi[q] + xi[radix - q];
      }
      out.re[base * stride + j] = dr;
      out.im[base * stride + j] = di;
      for (std::size_t kk = 1; kk <= h; ++kk) {
        double rr = xr[0], ri = xi[0], tr = 0.0, ti = 0.0;
        for (std::size_t q = 1; q <= h; ++q) {
          const double cr = coef[2 * ((q - 1) * h + (kk - 1))], ci = coef[2 * ((q - 1) * h + (kk - 1)) + 1];
          rr += (xr[q] + xr[radix - q]) * cr;
          ri += (xi[q] + xi[radix - q]) * cr;
          tr -= (xi[q] - xi[radix - q]) * ci;
          ti += (xr[q] - xr[radix - q]) * ci;
        }
        out.re[(base + kk * st.span) * stride + j] = rr + tr;
        out.im[(base + kk * st.span) * stride + j] = ri + ti;
        out.re[(base + (radix - kk) * st.span) * stride + j] = rr - tr;
        out.im[(base + (radix - kk) * st.span) * stride + j] = ri - ti;
      }
    }
  }
}

template <bool Inverse>
[[gnu::always_inline]] inline void run_pass(const FftPlan::BatchStage& st, std::size_t n, Lanes in, OutLanes out,
                                            std::size_t stride, std::size_t count) {
  const auto& c = st.coefficients[Inverse ? 1 : 0];
  const double* tw = c.data();
  const double* coef = tw + 2 * (st.radix - 1) * st.span;
  switch (st.radix) {
    case 2: pass_radix2(st, n, tw, in, out, stride, count); break;
    case 4: pass_radix4<Inverse>(st, n, tw, in, out, stride, count); break;
    case 3: pass_odd<3>(st, n, tw, coef, in, out, stride, count); break;
    case 5: pass_odd<5>(st, n, tw, coef, in, out, stride, count); break;
    case 7: pass_odd<7>(st, n, tw, coef, in, out, stride, count); break;
    default: pass_odd<0>(st, n, tw, coef, in, out, stride, count); break;
  }
}

template <bool Inverse>
[[gnu::target_clones("avx2", "default")]] void run_batch(const std::vector<FftPlan::BatchStage>& stages,
                                                         std::size_t n, double* re, double* im, std::size_t stride,
                                                         std::size_t count, double* work_re, double* work_im) {
  double* src_re = re;
  double* src_im = im;
  double* dst_re = work_re;
  double* dst_im = work_im;
  for (const auto& st : stages) {
    run_pass<Inverse>(st, n, {src_re, src_im}, {dst_re, dst_im}, stride, count);
    std::swap(src_re, dst_re);
    std::swap(src_im, dst_im);
  }
  if (src_re != re) {
    for (std::size_t i = 0; i < n; ++i) {
      std::copy_n(src_re + i * stride, count, re + i * stride);
      std::copy_n(src_im + i * stride, count, im + i * stride);
    }
  }
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  require(n >= 1, "FftPlan: length must be positive");
  forward_twiddles_.resize(n);
  backward_twiddles_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    forward_twiddles_[i] = {std::cos(angle), std::sin(angle)};
    backward_twiddles_[i] = std::conj(forward_twiddles_[i]);
  }

  std::size_t remaining = n;
  std::size_t radix = 4;
  const auto floor_sqrt = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (remaining > 1) {
    while (remaining % radix != 0) {
      switch (radix) {
        case 4: radix = 2; break;
        case 2: radix = 3; break;
        default: radix += 2; break;
      }
      if (radix > floor_sqrt) radix = remaining;
    }
    remaining /= radix;
    stages_.emplace_back(radix, remaining);
  }
  if (stages_.empty()) stages_.emplace_back(1, 1);

  // Stockham passes use the same radices; span is the length already done.
  std::size_t span = 1;
  for (const auto& [radix, rest] : stages_) {
    if (radix == 1) break;
    BatchStage st{radix, span, {}};
    for (int dir = 0; dir < 2; ++dir) {
      const auto& table = dir == 0 ? forward_twiddles_ : backward_twiddles_;
      auto& c = st.coefficients[dir];
      const std::size_t step = n / (span * radix);
      for (std::size_t k = 0; k < span; ++k) {
        for (std::size_t r = 1; r < radix; ++r) {
          const Complex z = table[r * k * step];
          c.push_back(z.real());
          c.push_back(z.imag());
        }
      }
      const std::size_t h = radix / 2;
      for (std::size_t q = 1; q <= h; ++q) {
        for (std::size_t k = 1; k <= h; ++k) {
          const Complex z = table[((q * k) % radix) * (n / radix)];
          c.push_back(z.real());
          c.push_back(z.imag());
        }
      }
    }
    batch_stages_.push_back(std::move(st));
    span *= radix;
  }
}

void FftPlan::transform(std::span<const Complex> in, std::span<Complex> out,
                        const std::vector<Complex>& twiddles, bool inverse) const {
  require(in.size() == n_ && out.size() == n_, "FftPlan: buffer length does not match plan");
  if (n_ == 1) {
    out[0] = in[0];
    return;
  }
  const Kernel kernel{stages_, twiddles.data(), n_, inverse};
  kernel.work(out.data(), in.data(), 1, 0);
}

void FftPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
  transform(in, out, forward_twiddles_, false);
}

void FftPlan::backward(std::span<const Complex> in, std::span<Complex> out) const {
  transform(in, out, backward_twiddles_, true);
}

}  // namespace fda

namespace fda {

void FftPlan::forward_batch(double* re, double* im, std::size_t stride, std::size_t count, double* work_re,
                            double* work_im) const {
  require(count <= stride, "FftPlan: batch count exceeds stride");
  run_batch<false>(batch_stages_, n_, re, im, stride, count, work_re, work_im);
}

void FftPlan::backward_batch(double* re, double* im, std::size_t stride, std::size_t count, double* work_re,
                             double* work_im) const {
  require(count <= stride, "FftPlan: batch count exceeds stride");
  run_batch<true>(batch_stages_, n_, re, im, stride, count, work_re, work_im);
}

}  // namespace fda
