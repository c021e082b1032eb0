#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "lsharm/specfun.hpp"

using namespace lsharm;

namespace {

// 60-term ascending series for j_n in extended precision (test oracle,
// valid while terms stay representable)
long double jn_series_ld(int n, long double x) {
  long double lead = 1.0L;
  for (int i = 1; i <= n; ++i) lead *= x / (2.0L * i + 1.0L);
  long double term = 1.0L, sum = 1.0L;
  const long double z = 0.5L * x * x;
  for (int s = 1; s <= 60; ++s) {
    term *= -z / (s * (2.0L * n + 2.0L * s + 1.0L));
    sum += term;
  }
  return lead * sum;
}

long double dfact_odd_ld(int n) {  // (2n+1)!!
  long double v = 1.0L;
  for (int i = 1; i <= n; ++i) v *= (2.0L * i + 1.0L);
  return v;
}

// Rodrigues-style oracle for S_n^m: explicit m-th derivative of P_n via the
// classical recurrence chain, evaluated in long double.
long double legendre_s_oracle(int n, int m, long double t) {
  // P_n coefficients via recurrence on full polynomials
  std::vector<std::vector<long double>> p(n + 1);
  p[0] = {1.0L};
  if (n >= 1) p[1] = {0.0L, 1.0L};
  for (int k = 1; k < n; ++k) {
    std::vector<long double> next(k + 2, 0.0L);
    for (std::size_t i = 0; i < p[k].size(); ++i) {
      next[i + 1] += (2.0L * k + 1.0L) / (k + 1.0L) * p[k][i];
    }
    for (std::size_t i = 0; i < p[k - 1].size(); ++i) {
      next[i] -= static_cast<long double>(k) / (k + 1.0L) * p[k - 1][i];
    }
    p[k + 1] = next;
  }
  std::vector<long double> c = p[n];
  for (int d = 0; d < m; ++d) {  // differentiate m times
    std::vector<long double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0L);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * i;
    c = dc;
  }
  long double val = 0.0L, tp = 1.0L;
  for (std::size_t i = 0; i < c.size(); ++i) {
    val += c[i] * tp;
    tp *= t;
  }
  val *= std::pow(1.0L - t * t, m / 2.0L);
  // orthonormal scaling with Condon-Shortley
  long double norm = (2.0L * n + 1.0L) / (4.0L * std::acos(-1.0L));
  for (int i = n - m + 1; i <= n + m; ++i) norm /= i;
  return (m % 2 ? -1.0L : 1.0L) * std::sqrt(norm) * val;
}

}  // namespace

TEST_CASE("spherical_bessel_j closed forms and series oracle") {
  CHECK(std::abs(specfun::spherical_bessel_j(0, std::acos(-1.0))) < 1e-15);
  CHECK(specfun::spherical_bessel_j(1, 0.0) == 0.0);
  CHECK(specfun::spherical_bessel_j(0, 0.0) == 1.0);

  const double oracle53 = static_cast<double>(jn_series_ld(5, 7.3L));
  CHECK(std::abs(specfun::spherical_bessel_j(5, 7.3) - oracle53) <=
        1e-13 * std::abs(oracle53));

  // sweep against the extended-precision series where the alternating sum
  // is well conditioned
  for (int n : {0, 1, 2, 3, 7, 15, 33, 64}) {
    for (double x : {0.05, 0.7, 2.0, 9.5, 21.0}) {
      if (x * x / 2.0 > n + 28.0) continue;  // oracle cancellation region
      const long double ref = jn_series_ld(n, x);
      const double got = specfun::spherical_bessel_j(n, x);
      CHECK(std::abs(got - static_cast<double>(ref)) <=
            1e-13 * std::max(std::abs(static_cast<double>(ref)), 1e-280));
    }
  }

  // closed trig forms at large argument
  for (double x : {21.0, 50.0, 200.0}) {
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const double j2 = (3.0 / (x * x) - 1.0) * std::sin(x) / x -
                      3.0 * std::cos(x) / (x * x);
    CHECK(specfun::spherical_bessel_j(0, x) == doctest::Approx(j0).epsilon(1e-13));
    CHECK(specfun::spherical_bessel_j(1, x) == doctest::Approx(j1).epsilon(1e-13));
    CHECK(specfun::spherical_bessel_j(2, x) == doctest::Approx(j2).epsilon(1e-12));
  }

  // three-term recurrence residual, relative to the local magnitude
  for (double x : {9.5, 21.0, 50.0, 200.0}) {
    std::vector<double> j(130);
    specfun::spherical_bessel_j_array(129, x, j);
    for (int n = 1; n <= 128; ++n) {
      const double res = j[n + 1] - (2.0 * n + 1.0) / x * j[n] + j[n - 1];
      const double scale = std::max(
          {std::abs(j[n + 1]), std::abs((2.0 * n + 1.0) / x * j[n]),
           std::abs(j[n - 1]), 1e-280});
      CHECK(std::abs(res) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("outgoing hankel function closed form") {
  for (double x : {0.7, 3.0, 11.0}) {
    const std::complex<double> h0 = specfun::spherical_hankel1(0, x);
    const std::complex<double> expect =
        std::complex<double>{0.0, -1.0} * std::exp(std::complex<double>{0.0, x}) / x;
    CHECK(std::abs(h0 - expect) < 1e-14);
  }
}

TEST_CASE("modified_bessel_j values and identity oracle") {
  CHECK(specfun::modified_bessel_j(7, 0.0) == 1.0);
  const double x = std::acos(-1.0) / 2.0;
  CHECK(specfun::modified_bessel_j(0, x) ==
        doctest::Approx(std::sin(x) / x).epsilon(1e-14));

  // (2n+1)!!/x^n scaling identity at n=40, x=10 in extended precision
  const long double j40 = jn_series_ld(40, 10.0L);
  const long double jt40 = j40 * dfact_odd_ld(40) / std::pow(10.0L, 40.0L);
  const double got = specfun::modified_bessel_j(40, 10.0);
  CHECK(std::abs(got - static_cast<double>(jt40)) <=
        1e-12 * std::abs(static_cast<double>(jt40)));
}

TEST_CASE("modified_bessel_y values and identity oracle") {
  CHECK(specfun::modified_bessel_y(3, 0.0) == 1.0);
  CHECK(specfun::modified_bessel_y(0, 1.0) ==
        doctest::Approx(std::cos(1.0)).epsilon(1e-14));

  // yt_25(4) = 4^26 y_25(4) / (-(49)!!)
  const double y25 = specfun::spherical_bessel_y(25, 4.0);
  const long double ref =
      std::pow(4.0L, 26.0L) * static_cast<long double>(y25) /
      (-dfact_odd_ld(24));
  const double got = specfun::modified_bessel_y(25, 4.0);
  CHECK(std::abs(got - static_cast<double>(ref)) <=
        1e-12 * std::abs(static_cast<double>(ref)));
}

TEST_CASE("modified/raw consistency across the working range") {
  for (int n = 0; n <= 30; ++n) {
    for (double x : {0.25, 1.0, 3.0, 7.7, 13.0, 20.0}) {
      const double jt = specfun::modified_bessel_j(n, x);
      const double yt = specfun::modified_bessel_y(n, x);
      const double j = specfun::spherical_bessel_j(n, x);
      const double y = specfun::spherical_bessel_y(n, x);
      const double jrec =
          jt * std::exp(n * std::log(x) - specfun::ln_odd_double_factorial(n));
      const double yrec =
          -yt *
          std::exp(specfun::ln_odd_double_factorial(n - 1) -
                   (n + 1.0) * std::log(x));
      CHECK(std::abs(jrec - j) <= 1e-11 * std::max(std::abs(j), 1e-300));
      CHECK(std::abs(yrec - y) <= 1e-11 * std::abs(y));
    }
  }
}

TEST_CASE("Wronskian of the spherical pair") {
  // j_n y_n' - j_n' y_n = 1/x^2, evaluated through the scaled pair as
  // jt_{n-1} yt_n / x^2 - jt_n yt_{n-1} / ((2n+1)(2n-1)) = 1/x^2
  // so that deep under/overflow of the raw pair never enters.
  for (int n : {1, 2, 5, 17, 64, 128}) {
    for (double x : {0.5, 5.0, 50.0}) {
      const double lhs =
          specfun::modified_bessel_j(n - 1, x) * specfun::modified_bessel_y(n, x) /
              (x * x) -
          specfun::modified_bessel_j(n, x) *
              specfun::modified_bessel_y(n - 1, x) /
              ((2.0 * n + 1.0) * (2.0 * n - 1.0));
      CHECK(std::abs(lhs - 1.0 / (x * x)) <= 1e-10 / (x * x));
    }
  }
  // raw-value cross-check where everything is representable
  for (int n : {1, 3, 10}) {
    for (double x : {0.5, 5.0, 50.0}) {
      std::vector<double> j(n + 2), y(n + 2);
      specfun::spherical_bessel_j_array(n + 1, x, j);
      specfun::spherical_bessel_y_array(n + 1, x, y);
      const double jp = j[n - 1] - (n + 1.0) / x * j[n];
      const double yp = y[n - 1] - (n + 1.0) / x * y[n];
      CHECK(std::abs(j[n] * yp - jp * y[n] - 1.0 / (x * x)) <=
            1e-10 / (x * x));
    }
  }
}

TEST_CASE("no NaN/Inf over the design domain") {
  for (int n : {0, 1, 5, 32, 100, 256}) {
    for (double x : {0.0, 1e-8, 0.3, 1.0, 17.0, 99.0, 200.0}) {
      const double j = specfun::spherical_bessel_j(n, x);
      const double jt = specfun::modified_bessel_j(n, x);
      const double yt = specfun::modified_bessel_y(n, x);
      CHECK(std::isfinite(j));
      CHECK(std::isfinite(jt));
      CHECK(std::isfinite(yt));
    }
  }
}

TEST_CASE("legendre_s seeds, poles and Rodrigues oracle") {
  const double pi = std::acos(-1.0);
  auto s00 = specfun::legendre_s(0, 0, 0.3);
  CHECK(s00[0] == doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-14));

  auto pole = specfun::legendre_s(2, 0, 1.0);
  CHECK(pole[0] == doctest::Approx(std::sqrt(1.0 / (4.0 * pi))).epsilon(1e-13));
  CHECK(pole[1] == doctest::Approx(std::sqrt(3.0 / (4.0 * pi))).epsilon(1e-13));
  CHECK(pole[2] == doctest::Approx(std::sqrt(5.0 / (4.0 * pi))).epsilon(1e-13));

  auto s = specfun::legendre_s(10, 3, 0.37);
  for (int n = 3; n <= 10; ++n) {
    const double ref = static_cast<double>(legendre_s_oracle(n, 3, 0.37L));
    CHECK(std::abs(s[n - 3] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("legendre_s stays finite at the design band limit") {
  for (int m : {0, 57, 300, 512}) {
    const auto s = specfun::legendre_s(512, m, 0.31);
    for (double v : s) CHECK(std::isfinite(v));
  }
}

TEST_CASE("legendre_s orthonormality under Gauss-Legendre quadrature") {
  const int band = 64;
  const auto& rule = specfun::gauss_legendre(band + 1);
  const double pi = std::acos(-1.0);
  std::vector<std::vector<double>> tables(rule.nodes.size());
  for (int m : {0, 1, 7, 33}) {
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      tables[q] = specfun::legendre_s(band, m, rule.nodes[q]);
    }
    for (int n = m; n <= band; n += 9) {
      for (int n2 = m; n2 <= band; n2 += 7) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          acc += rule.weights[q] * tables[q][n - m] * tables[q][n2 - m];
        }
        acc *= 2.0 * pi;
        CHECK(std::abs(acc - (n == n2 ? 1.0 : 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("gauss_legendre exactness") {
  const auto& r1 = specfun::gauss_legendre(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0));
  CHECK(r1.weights[0] == doctest::Approx(2.0));

  const auto& r2 = specfun::gauss_legendre(2);
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const auto& r16 = specfun::gauss_legendre(16);
  double acc = 0.0, wsum = 0.0;
  for (int i = 0; i < 16; ++i) {
    acc += r16.weights[i] * std::pow(r16.nodes[i], 30);
    wsum += r16.weights[i];
    if (i) CHECK(r16.nodes[i] > r16.nodes[i - 1]);
    CHECK(r16.weights[i] > 0.0);
  }
  CHECK(std::abs(acc - 2.0 / 31.0) < 1e-14);
  CHECK(std::abs(wsum - 2.0) < 1e-14);
}

TEST_CASE("chebyshev_eval mapped polynomials") {
  CHECK(specfun::chebyshev_eval(0, -3.0, 5.0, 1.234) == 1.0);
  CHECK(specfun::chebyshev_eval(1, 0.0, 2.0, 2.0) == doctest::Approx(1.0));
  CHECK(specfun::chebyshev_eval(5, 1.0, 3.0, 1.7) ==
        doctest::Approx(std::cos(5.0 * std::acos(-0.3))).epsilon(1e-14));
}
