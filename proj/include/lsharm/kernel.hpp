#ifndef LSHARM_KERNEL_HPP
#define LSHARM_KERNEL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lsharm/moments.hpp"
#include "lsharm/radial_grid.hpp"
#include "lsharm/scaled.hpp"

namespace lsharm {

/// Prefactors of the three scaled kernel terms at one (degree, node) pair,
/// held as an O(1) complex factor plus a log-space exponent. Combining them
/// with the correspondingly scaled integrals reproduces the unscaled kernel.
struct KernelCoefficients {
  cdouble pref1{0.0, 0.0};  // i k^2 yt_n(ka) / (2n+1)
  cdouble pref2{0.0, 0.0};  // i k^2 jt_n(ka) / (2n+1)
  cdouble pref3{0.0, 0.0};  // -jt_n(ka)
  double loge1 = 0.0;       // -(n+1) ln a
  double loge2 = 0.0;       // n ln a
  double loge3 = 0.0;       // n ln a + (2n+3) ln k - 2 ln (2n+1)!!
};

KernelCoefficients make_kernel_coefficients(int n, double a, double k);

/// Running radial integrals at every grid node for one (n, m) pair.
struct CumulativeIntegrals {
  std::vector<ScaledComplex> prefix;  // int_0^a rho^{n+2} jt_n(k rho) I drho
  std::vector<ScaledComplex> suffix;  // int_a^R rho^{1-n} yt_n(k rho) I drho
  ScaledComplex full;                 // int_0^R rho^{n+2} jt_n(k rho) I drho
  std::size_t ops = 0;                // multiply-adds (cost-model checks)
};

/// Prefix/suffix sums per the moment recursion: one pass left-to-right for
/// the J branch, one right-to-left for the Y branch. cheb_coeffs holds the
/// interval-major Chebyshev coefficients of I_n^m (Nd per interval).
CumulativeIntegrals cumulative_integrals(const RadialGrid& grid,
                                         const MomentTable& moments, int n,
                                         std::span<const cdouble> cheb_coeffs);

/// Recombines the three scaled integrals with the kernel coefficients into
/// K_n^m(a). Throws ScalingOverflow if an exponent exceeds the double range.
cdouble assemble_kernel(const ScaledComplex& prefix, const ScaledComplex& suffix,
                        const ScaledComplex& full, const KernelCoefficients& kc);

}  // namespace lsharm

#endif
