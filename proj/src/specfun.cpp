#include "lsharm/specfun.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lsharm::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Ascending series of jt_n (bracketed series in the modified-form
// definition); converges fast whenever x^2/2 < n+1.
double jt_series(int n, double x) {
  const double z = 0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int s = 1; s < 500; ++s) {
    term *= -z / (static_cast<double>(s) * (2.0 * n + 2.0 * s + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Downward Miller recurrence directly on the rescaled sequence:
//   jt_{k-1} = jt_k - x^2/((2k+1)(2k+3)) jt_{k+1}.
// Every trial value stays O(1); the result is normalized against jt_0 or
// jt_1, whichever is better conditioned.
void jt_miller(int nmax, double x, std::span<double> out) {
  const int top = std::max(nmax, static_cast<int>(std::ceil(x)));
  const int start = top + 40 +
                    static_cast<int>(2.0 * std::sqrt(static_cast<double>(top)));
  double upper = 0.0;  // trial jt_{k+1}
  double cur = 1e-30;  // trial jt_k
  double trial0 = 0.0, trial1 = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= nmax) out[k] = cur;
    if (k == 1) trial1 = cur;
    if (k == 0) trial0 = cur;
    const double lower = cur - x * x / ((2.0 * k + 1.0) * (2.0 * k + 3.0)) * upper;
    upper = cur;
    cur = lower;
  }
  // Normalize against whichever closed form is better conditioned:
  // jt_0 = sin(x)/x loses digits near sin x = 0, jt_1 near sin x = x cos x.
  const double s = std::sin(x), c = std::cos(x);
  double scale;
  if (std::abs(s) >= std::abs(s - x * c) / std::max(1.0, x)) {
    scale = (s / x) / trial0;
  } else {
    scale = (3.0 * (s - x * c) / (x * x * x)) / trial1;
  }
  for (int k = 0; k <= nmax; ++k) out[k] *= scale;
}

}  // namespace

void modified_bessel_j_array(int nmax, double x, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= nmax + 1);
  if (x == 0.0) {
    std::fill(out.begin(), out.begin() + nmax + 1, 1.0);
    return;
  }
  jt_miller(nmax, x, out);
  // Where the series condition holds the series is the better-conditioned
  // evaluation; it also repairs any Miller normalization drift high up.
  for (int n = nmax; n >= 0; --n) {
    if (0.5 * x * x < n + 1.0) {
      out[n] = jt_series(n, x);
    } else {
      break;
    }
  }
}

double modified_bessel_j(int n, double x) {
  if (x == 0.0) return 1.0;
  if (0.5 * x * x < n + 1.0) return jt_series(n, x);
  std::vector<double> buf(n + 1);
  jt_miller(n, x, buf);
  return buf[n];
}

void modified_bessel_y_array(int nmax, double x, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= nmax + 1);
  if (x == 0.0) {
    std::fill(out.begin(), out.begin() + nmax + 1, 1.0);
    return;
  }
  out[0] = std::cos(x);
  if (nmax == 0) return;
  out[1] = std::cos(x) + x * std::sin(x);
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = out[k] - x * x / ((2.0 * k + 1.0) * (2.0 * k - 1.0)) * out[k - 1];
  }
}

double modified_bessel_y(int n, double x) {
  std::vector<double> buf(n + 1);
  modified_bessel_y_array(n, x, buf);
  return buf[n];
}

double ln_odd_double_factorial(int n) {
  constexpr int kMax = 4096;
  static std::vector<double> table;
  static std::once_flag flag;
  std::call_once(flag, [] {
    table.resize(kMax + 1);
    long double acc = 0.0L;
    table[0] = 0.0;  // 1!! = 1
    for (int i = 1; i <= kMax; ++i) {
      acc += std::log(static_cast<long double>(2 * i + 1));
      table[i] = static_cast<double>(acc);
    }
  });
  if (n < 0) return 0.0;
  if (n > kMax) throw std::out_of_range("ln_odd_double_factorial: n too large");
  return table[n];
}

double spherical_bessel_j(int n, double x) {
  if (n == 0) return x == 0.0 ? 1.0 : std::sin(x) / x;
  if (x == 0.0) return 0.0;
  const double jt = modified_bessel_j(n, x);
  const double loge = n * std::log(x) - ln_odd_double_factorial(n);
  if (loge < -745.0) return 0.0;
  return jt * std::exp(loge);
}

void spherical_bessel_j_array(int nmax, double x, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= nmax + 1);
  if (x == 0.0) {
    out[0] = 1.0;
    std::fill(out.begin() + 1, out.begin() + nmax + 1, 0.0);
    return;
  }
  modified_bessel_j_array(nmax, x, out);
  const double lx = std::log(x);
  for (int n = 0; n <= nmax; ++n) {
    const double loge = n * lx - ln_odd_double_factorial(n);
    out[n] = loge < -745.0 ? 0.0 : out[n] * std::exp(loge);
  }
}

void spherical_bessel_y_array(int nmax, double x, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= nmax + 1);
  out[0] = -std::cos(x) / x;
  if (nmax == 0) return;
  out[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1];
  }
}

double spherical_bessel_y(int n, double x) {
  std::vector<double> buf(n + 1);
  spherical_bessel_y_array(n, x, buf);
  return buf[n];
}

std::complex<double> spherical_hankel1(int n, double x) {
  return {spherical_bessel_j(n, x), spherical_bessel_y(n, x)};
}

void legendre_s(int band, int m, double t, std::span<double> out) {
  assert(m >= 0 && band >= m);
  assert(static_cast<int>(out.size()) >= band - m + 1);
  const double omt2 = (1.0 - t) * (1.0 + t);
  // seed S_m^m = (-1)^m sqrt((2m+1)!!/(4 pi (2m)!!)) (1-t^2)^{m/2},
  // accumulated multiplicatively so large m underflows instead of
  // overflowing.
  double smm = 1.0 / std::sqrt(4.0 * kPi);
  for (int i = 1; i <= m; ++i) {
    smm *= std::sqrt((2.0 * i + 1.0) * omt2 / (2.0 * i));
  }
  if (m & 1) smm = -smm;
  out[0] = smm;
  if (band == m) return;
  double prev2 = smm;
  double prev1 = t * std::sqrt(2.0 * m + 3.0) * smm;
  out[1] = prev1;
  for (int n = m + 2; n <= band; ++n) {
    const double a =
        std::sqrt((4.0 * n * n - 1.0) / (static_cast<double>(n) * n - static_cast<double>(m) * m));
    const double b = std::sqrt(
        ((static_cast<double>(n) - 1.0) * (n - 1.0) - static_cast<double>(m) * m) /
        (4.0 * (static_cast<double>(n) - 1.0) * (n - 1.0) - 1.0));
    const double cur = a * (t * prev1 - b * prev2);
    out[n - m] = cur;
    prev2 = prev1;
    prev1 = cur;
  }
}

std::vector<double> legendre_s(int band, int m, double t) {
  std::vector<double> out(band - m + 1);
  legendre_s(band, m, t, out);
  return out;
}

double legendre_p(int n, double t) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = t;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * t * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void legendre_p_array(int nmax, double t, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= nmax + 1);
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = t;
  for (int k = 1; k < nmax; ++k) {
    out[k + 1] = ((2.0 * k + 1.0) * t * out[k] - k * out[k - 1]) / (k + 1.0);
  }
}

namespace {

QuadratureRule make_gauss_legendre(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton on P_q.
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    double pd = 1.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < q; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      pd = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pd;
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pd * pd);
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int q) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, make_gauss_legendre(q)).first;
  return it->second;
}

double chebyshev_eval(int l, double u0, double u1, double rho) {
  double s = (rho - 0.5 * (u1 + u0)) / (0.5 * (u1 - u0));
  s = std::clamp(s, -1.0, 1.0);
  return std::cos(l * std::acos(s));
}

void chebyshev_values(int lmax, double s, std::span<double> out) {
  assert(static_cast<int>(out.size()) >= lmax + 1);
  out[0] = 1.0;
  if (lmax == 0) return;
  out[1] = s;
  for (int l = 1; l < lmax; ++l) out[l + 1] = 2.0 * s * out[l] - out[l - 1];
}

std::vector<double> chebyshev_points(int count, double u0, double u1) {
  std::vector<double> pts(count);
  const double mid = 0.5 * (u0 + u1);
  const double rad = 0.5 * (u1 - u0);
  for (int k = 0; k < count; ++k) {
    // first-kind points, ascending
    pts[k] = mid + rad * std::cos((2.0 * (count - k) - 1.0) * kPi / (2.0 * count));
  }
  return pts;
}

}  // namespace lsharm::specfun
