#include "lsharm/kernel.hpp"

#include <cmath>

#include "lsharm/errors.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

KernelCoefficients make_kernel_coefficients(int n, double a, double k) {
  KernelCoefficients kc;
  const double jt = specfun::modified_bessel_j(n, k * a);
  const double yt = specfun::modified_bessel_y(n, k * a);
  const cdouble i{0.0, 1.0};
  kc.pref1 = i * k * k * yt / (2.0 * n + 1.0);
  kc.pref2 = i * k * k * jt / (2.0 * n + 1.0);
  kc.pref3 = -jt;
  const double la = std::log(a);
  const double lk = std::log(k);
  kc.loge1 = -(n + 1.0) * la;
  kc.loge2 = n * la;
  kc.loge3 = n * la + (2.0 * n + 3.0) * lk -
             2.0 * specfun::ln_odd_double_factorial(n);
  return kc;
}

CumulativeIntegrals cumulative_integrals(const RadialGrid& grid,
                                         const MomentTable& mt, int n,
                                         std::span<const cdouble> cheb_coeffs) {
  const int Ni = grid.Ni;
  const int Nd = grid.Nd;
  CumulativeIntegrals out;
  out.prefix.resize(grid.total_nodes());
  out.suffix.resize(grid.total_nodes());

  // segment s of interval j weighted by the interval's Chebyshev coefficients
  auto seg_j = [&](int j, int s) {
    cdouble acc = 0.0;
    for (int l = 0; l < Nd; ++l) {
      acc += cheb_coeffs[static_cast<std::size_t>(j) * Nd + l] * mt.jmom(n, j, s, l);
    }
    out.ops += Nd;
    return ScaledComplex{acc, mt.jlog(n, j, s)};
  };
  auto seg_y = [&](int j, int s) {
    cdouble acc = 0.0;
    for (int l = 0; l < Nd; ++l) {
      acc += cheb_coeffs[static_cast<std::size_t>(j) * Nd + l] * mt.ymom(n, j, s, l);
    }
    out.ops += Nd;
    return ScaledComplex{acc, mt.ylog(n, j, s)};
  };

  // prefix pass: node k sits after segments 0..k of its interval
  ScaledComplex carry;
  for (int j = 0; j < Ni; ++j) {
    for (int k = 0; k < Nd; ++k) {
      carry += seg_j(j, k);
      out.prefix[grid.node_index(j, k)] = carry;
    }
    carry += seg_j(j, Nd);
  }
  out.full = carry;

  // suffix pass: node k sits before segments k+1..Nd of its interval;
  // the segment touching rho = 0 is never consumed.
  ScaledComplex ycarry;
  for (int j = Ni - 1; j >= 0; --j) {
    for (int k = Nd - 1; k >= 0; --k) {
      ycarry += seg_y(j, k + 1);
      out.suffix[grid.node_index(j, k)] = ycarry;
    }
    if (j > 0) ycarry += seg_y(j, 0);
  }
  return out;
}

cdouble assemble_kernel(const ScaledComplex& prefix, const ScaledComplex& suffix,
                        const ScaledComplex& full, const KernelCoefficients& kc) {
  auto term = [](const ScaledComplex& sc, const cdouble& pref, double loge) {
    if (sc.is_zero()) return cdouble{0.0, 0.0};
    const cdouble t = sc.v * pref;
    const double mag = std::abs(t);
    const double total = sc.loge + loge;
    if (mag > 0.0 && std::log(mag) + total > 700.0) {
      throw ScalingOverflow("kernel recombination exceeds floating range");
    }
    return t * std::exp(total);
  };
  return term(prefix, kc.pref1, kc.loge1) + term(suffix, kc.pref2, kc.loge2) +
         term(full, kc.pref3, kc.loge3);
}

}  // namespace lsharm
