// Copyright 2026 The spectral-pcd Authors
// SPDX-License-Identifier: Apache-2.0
//
// One-dimensional complex FFT of arbitrary length.
//
// Lengths whose prime factors are all <= kMaxDirectRadix use a recursive
// mixed-radix Cooley-Tukey decomposition (radix 4 and 2 butterflies are
// specialised, other factors use a generic O(p^2) butterfly). Lengths with a
// larger prime factor go through Bluestein's chirp-z algorithm on top of a
// power-of-two plan.
//
// Both directions are unnormalized: forward uses exp(-2 pi i jk/n), inverse
// uses exp(+2 pi i jk/n). A plan is immutable after construction and may be
// shared between threads as long as each thread brings its own FftWorkspace.

#ifndef SPECTRAL_PCD_FFT_HPP
#define SPECTRAL_PCD_FFT_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace spcd::fft {

inline constexpr std::size_t kMaxDirectRadix = 31;

enum class Direction { kForward, kInverse };

template <class T>
struct FftWorkspace {
  std::vector<std::complex<T>> copy;
  std::vector<std::complex<T>> butterfly;
  std::vector<std::complex<T>> chirp;
  std::unique_ptr<FftWorkspace> inner;
};

template <class T>
class FftPlan {
 public:
  using Complex = std::complex<T>;

  explicit FftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("FFT length must be positive");
    factors_ = factorize(n);
    std::size_t largest = 1;
    for (std::size_t p : factors_) largest = std::max(largest, p);
    if (largest > kMaxDirectRadix) {
      init_bluestein();
    } else {
      twiddles_ = unit_roots(n_);
      for (std::size_t p : factors_) max_radix_ = std::max(max_radix_, p);
    }
  }

  std::size_t size() const noexcept { return n_; }
  bool uses_bluestein() const noexcept { return sub_plan_ != nullptr; }
  std::span<const std::size_t> factors() const noexcept { return factors_; }

  void execute(std::span<Complex> data, Direction dir, FftWorkspace<T>& ws) const {
    if (data.size() != n_) throw std::invalid_argument("FFT input length does not match plan");
    if (n_ == 1) return;
    if (uses_bluestein()) {
      bluestein(data, dir, ws);
      return;
    }
    ws.copy.assign(data.begin(), data.end());
    ws.butterfly.resize(max_radix_);
    recurse(ws.copy.data(), 1, data.data(), n_, 0, dir == Direction::kInverse, ws.butterfly.data());
  }

  void execute(std::span<Complex> data, Direction dir) const {
    FftWorkspace<T> ws;
    execute(data, dir, ws);
  }

  void forward(std::span<Complex> data) const { execute(data, Direction::kForward); }
  void inverse(std::span<Complex> data) const { execute(data, Direction::kInverse); }

 private:
  // Radix 4 first, then 2, then odd primes ascending.
  static std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> f;
    while (n % 4 == 0) {
      f.push_back(4);
      n /= 4;
    }
    if (n % 2 == 0) {
      f.push_back(2);
      n /= 2;
    }
    for (std::size_t p = 3; p * p <= n; p += 2) {
      while (n % p == 0) {
        f.push_back(p);
        n /= p;
      }
    }
    if (n > 1) f.push_back(n);
    return f;
  }

  static std::vector<Complex> unit_roots(std::size_t n) {
    std::vector<Complex> w(n);
    for (std::size_t j = 0; j < n; ++j) {
      const T angle = -T(2) * std::numbers::pi_v<T> * static_cast<T>(j) / static_cast<T>(n);
      w[j] = Complex(std::cos(angle), std::sin(angle));
    }
    return w;
  }

  Complex root(std::size_t exponent, std::size_t len, bool inverse) const {
    const Complex w = twiddles_[(exponent % len) * (n_ / len)];
    return inverse ? std::conj(w) : w;
  }

  // Transforms `len` samples read from `in` with stride `stride` into
  // contiguous `out`, using factors_[level..].
  void recurse(const Complex* in, std::size_t stride, Complex* out, std::size_t len,
               std::size_t level, bool inverse, Complex* tmp) const {
    if (len == 1) {
      out[0] = in[0];
      return;
    }
    const std::size_t p = factors_[level];
    const std::size_t m = len / p;
    for (std::size_t q = 0; q < p; ++q) {
      recurse(in + q * stride, stride * p, out + q * m, m, level + 1, inverse, tmp);
    }

    switch (p) {
      case 2:
        for (std::size_t k = 0; k < m; ++k) {
          const Complex a = out[k];
          const Complex b = out[k + m] * root(k, len, inverse);
          out[k] = a + b;
          out[k + m] = a - b;
        }
        return;
      case 4: {
        // Multiplication by -i (forward) or +i (inverse).
        const auto rot = [inverse](Complex z) {
          return inverse ? Complex(-z.imag(), z.real()) : Complex(z.imag(), -z.real());
        };
        for (std::size_t k = 0; k < m; ++k) {
          const Complex a0 = out[k];
          const Complex a1 = out[k + m] * root(k, len, inverse);
          const Complex a2 = out[k + 2 * m] * root(2 * k, len, inverse);
          const Complex a3 = out[k + 3 * m] * root(3 * k, len, inverse);
          const Complex s02 = a0 + a2, d02 = a0 - a2;
          const Complex s13 = a1 + a3, d13 = rot(a1 - a3);
          out[k] = s02 + s13;
          out[k + m] = d02 + d13;
          out[k + 2 * m] = s02 - s13;
          out[k + 3 * m] = d02 - d13;
        }
        return;
      }
      default:
        for (std::size_t k = 0; k < m; ++k) {
          for (std::size_t q = 0; q < p; ++q) tmp[q] = out[q * m + k] * root(q * k, len, inverse);
          for (std::size_t s = 0; s < p; ++s) {
            Complex acc = tmp[0];
            for (std::size_t q = 1; q < p; ++q) acc += tmp[q] * root(q * s * m, len, inverse);
            out[k + s * m] = acc;
          }
        }
        return;
    }
  }

  void init_bluestein() {
    std::size_t m = 1;
    while (m < 2 * n_ - 1) m <<= 1;
    sub_plan_ = std::make_shared<const FftPlan>(m);

    // chirp_[j] = exp(-i pi j^2 / n); j^2 is reduced mod 2n to keep the angle small.
    chirp_.resize(n_);
    const std::size_t two_n = 2 * n_;
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t jj = (j * j) % two_n;
      const T angle = -std::numbers::pi_v<T> * static_cast<T>(jj) / static_cast<T>(n_);
      chirp_[j] = Complex(std::cos(angle), std::sin(angle));
    }
    kernel_.assign(m, Complex(0));
    kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n_; ++j) {
      kernel_[j] = std::conj(chirp_[j]);
      kernel_[m - j] = std::conj(chirp_[j]);
    }
    sub_plan_->forward(kernel_);
  }

  void bluestein(std::span<Complex> data, Direction dir, FftWorkspace<T>& ws) const {
    const bool inverse = dir == Direction::kInverse;
    const std::size_t m = sub_plan_->size();
    if (!ws.inner) ws.inner = std::make_unique<FftWorkspace<T>>();
    ws.chirp.assign(m, Complex(0));
    // inverse(x) = conj(forward(conj(x)))
    for (std::size_t j = 0; j < n_; ++j) {
      const Complex x = inverse ? std::conj(data[j]) : data[j];
      ws.chirp[j] = x * chirp_[j];
    }
    sub_plan_->execute(ws.chirp, Direction::kForward, *ws.inner);
    for (std::size_t j = 0; j < m; ++j) ws.chirp[j] *= kernel_[j];
    sub_plan_->execute(ws.chirp, Direction::kInverse, *ws.inner);
    const T scale = T(1) / static_cast<T>(m);
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex y = ws.chirp[k] * chirp_[k] * scale;
      data[k] = inverse ? std::conj(y) : y;
    }
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::size_t max_radix_ = 1;
  std::vector<Complex> twiddles_;

  std::shared_ptr<const FftPlan> sub_plan_;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_;
};

}  // namespace spcd::fft

#endif  // SPECTRAL_PCD_FFT_HPP
