#ifndef LSHARM_SCALED_HPP
#define LSHARM_SCALED_HPP

#include <cmath>
#include <complex>
#include <limits>

namespace lsharm {

/// Complex value carried as v * exp(loge). Keeps running radial integrals
/// representable when the physical scale spans hundreds of orders of
/// magnitude; exponents only collapse at the final kernel recombination.
struct ScaledComplex {
  std::complex<double> v{0.0, 0.0};
  double loge{0.0};

  static ScaledComplex zero() { return {}; }

  bool is_zero() const { return v.real() == 0.0 && v.imag() == 0.0; }

  /// Keeps |v| within a moderate window so that subsequent additions and
  /// multiplications cannot overflow.
  void normalize() {
    const double a = std::abs(v);
    if (a == 0.0) {
      loge = 0.0;
      return;
    }
    if (a > 1e100 || a < 1e-100) {
      const double s = std::log(a);
      v /= std::exp(s);
      loge += s;
    }
  }

  ScaledComplex& operator+=(const ScaledComplex& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    if (o.loge > loge) {
      const double shift = loge - o.loge;
      v = o.v + v * std::exp(shift);
      loge = o.loge;
    } else {
      const double shift = o.loge - loge;
      v += o.v * std::exp(shift);
    }
    normalize();
    return *this;
  }

  ScaledComplex& mul(const std::complex<double>& c, double log_extra = 0.0) {
    v *= c;
    loge += log_extra;
    normalize();
    return *this;
  }

  /// Collapse to a plain complex; exponent overflow reports +inf magnitude
  /// to the caller (which raises ScalingOverflow at the kernel level).
  std::complex<double> value() const {
    if (is_zero()) return {0.0, 0.0};
    return v * std::exp(loge);
  }

  /// value() times exp(log_extra), with the exponents combined first.
  std::complex<double> value_scaled(double log_extra) const {
    if (is_zero()) return {0.0, 0.0};
    return v * std::exp(loge + log_extra);
  }

  double log_magnitude() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    return loge + std::log(std::abs(v));
  }
};

inline ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) {
  a += b;
  return a;
}

}  // namespace lsharm

#endif
