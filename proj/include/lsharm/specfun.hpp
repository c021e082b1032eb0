#ifndef LSHARM_SPECFUN_HPP
#define LSHARM_SPECFUN_HPP

#include <complex>
#include <span>
#include <vector>

namespace lsharm::specfun {

// ---------------------------------------------------------------------------
// Spherical Bessel functions.
//
// The raw j_n underflows and y_n overflows far inside the working band
// range, so the radial machinery is built on the rescaled forms
//
//   jt_n(x) = (2n+1)!!/x^n     * j_n(x)   (jt_n(0) = 1, |jt_n| <= 1)
//   yt_n(x) = x^{n+1}/-(2n-1)!! * y_n(x)  (yt_n(0) = 1)
//
// which stay O(1) for all arguments of interest. Raw j_n is exposed for the
// incident-field and interface-matching formulas; raw y_n is a helper whose
// overflow range is the caller's responsibility.
// ---------------------------------------------------------------------------

/// j_n(x) for n >= 0, x >= 0. Relative accuracy ~1e-13 for n <= 256,
/// x <= 200; underflows gracefully to 0.
double spherical_bessel_j(int n, double x);

/// j_0..j_nmax in one downward pass.
void spherical_bessel_j_array(int nmax, double x, std::span<double> out);

double spherical_bessel_y(int n, double x);
void spherical_bessel_y_array(int nmax, double x, std::span<double> out);

std::complex<double> spherical_hankel1(int n, double x);

/// jt_n(x); series below the x^2/2 < n+1 crossover, scaled downward
/// recurrence above it.
double modified_bessel_j(int n, double x);
void modified_bessel_j_array(int nmax, double x, std::span<double> out);

/// yt_n(x); scaled upward recurrence, overflow-free.
double modified_bessel_y(int n, double x);
void modified_bessel_y_array(int nmax, double x, std::span<double> out);

/// ln((2n+1)!!), accumulated in extended precision (never a raw product).
double ln_odd_double_factorial(int n);

// ---------------------------------------------------------------------------
// Normalized associated Legendre functions.
//
// S_n^m(t) is the colatitude part of the orthonormal spherical harmonic
// with Condon-Shortley phase:
//   Y_n^m(theta,phi) = S_n^{|m|}(cos theta) e^{im phi}         for m >= 0,
//   Y_n^{-m}         = (-1)^m conj(Y_n^m).
// Orthonormality: 2*pi * int_-1^1 S_n^m S_n'^m dt = delta_{nn'}.
// ---------------------------------------------------------------------------

/// Fills out[0..band-m] with S_m^m(t) .. S_band^m(t).
void legendre_s(int band, int m, double t, std::span<double> out);
std::vector<double> legendre_s(int band, int m, double t);

/// Classical Legendre polynomial P_n(t).
double legendre_p(int n, double t);
/// P_0..P_nmax.
void legendre_p_array(int nmax, double t, std::span<double> out);

// ---------------------------------------------------------------------------
// Quadrature and Chebyshev utilities.
// ---------------------------------------------------------------------------

struct QuadratureRule {
  std::vector<double> nodes;    // ascending on [-1, 1]
  std::vector<double> weights;  // positive, sum 2
};

/// Gauss-Legendre rule of order q (exact up to degree 2q-1); cached.
const QuadratureRule& gauss_legendre(int q);

/// T_l mapped to [u0, u1], evaluated at rho.
double chebyshev_eval(int l, double u0, double u1, double rho);

/// T_0(s) .. T_lmax(s) for s in [-1, 1].
void chebyshev_values(int lmax, double s, std::span<double> out);

/// Chebyshev points of the first kind on [u0, u1], ascending.
std::vector<double> chebyshev_points(int count, double u0, double u1);

}  // namespace lsharm::specfun

#endif
