// numeric.hpp
// Compensated summation and tables of roots of unity.

#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numbers>
#include <type_traits>
#include <vector>

namespace powersieve {

using cplx = std::complex<double>;

// Kahan-Babuska (Neumaier) summation; works for double and complex<double>.
template <typename T>
class KahanSum {
 public:
  void add(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      add_component(sum_, comp_, x);
    } else {
      double re = sum_.real(), ce = comp_.real();
      double im = sum_.imag(), ci = comp_.imag();
      add_component(re, ce, x.real());
      add_component(im, ci, x.imag());
      sum_ = T(re, im);
      comp_ = T(ce, ci);
    }
  }
  KahanSum& operator+=(const T& x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
};

// e(k/m) = exp(2 pi i k / m) for k in [0, m).
class UnitRoots {
 public:
  explicit UnitRoots(std::uint64_t modulus) : table_(modulus) {
    for (std::uint64_t k = 0; k < modulus; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(modulus);
      table_[k] = std::polar(1.0, angle);
    }
  }
  std::uint64_t modulus() const { return table_.size(); }
  // k must already be reduced.
  const cplx& operator[](std::uint64_t k) const { return table_[k]; }

 private:
  std::vector<cplx> table_;
};

// Relative difference with floor 1: |a - b| / max(1, |a|).
template <typename T>
double relative_residual(const T& a, const T& b) {
  const double scale = std::max(1.0, static_cast<double>(std::abs(a)));
  return static_cast<double>(std::abs(a - b)) / scale;
}

}  // namespace powersieve
