#include "lsharm/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsharm/errors.hpp"
#include "lsharm/parallel.hpp"
#include "lsharm/sht.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

namespace {

constexpr double kPi = std::numbers::pi;

cdouble ipow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// Constant part of the incident coefficient of degree n (the j_n(k rho)
// factor excluded):
//   i^{n +- mu} (2n+1) k^{-mu} sqrt(4pi (n+mu)! / ((2n+1)(n-mu)!)).
// The +mu branch (for m_inc >= 0) carries the Condon-Shortley repair that
// makes the synthesized series equal the stated closed-form field.
cdouble incident_constant(int n, int m_inc, double k) {
  const int mu = std::abs(m_inc);
  const double lnmag = 0.5 * (std::log(4.0 * kPi) + std::log(2.0 * n + 1.0) +
                              std::lgamma(n + mu + 1.0) -
                              std::lgamma(n - mu + 1.0)) -
                       mu * std::log(k);
  return ipow(m_inc >= 0 ? n + mu : n - mu) * std::exp(lnmag);
}

}  // namespace

ModeField incident_coefficients(const IncidentSpec& spec, const RadialGrid& grid,
                                int band, IncidentDiagnostics* diag) {
  const int mu = std::abs(spec.m_inc);
  if (band < mu) throw BandTooSmall("incident band below |m_inc|");
  ModeField out(band, grid.total_nodes());
  const cdouble phase =
      spec.offset == 0.0
          ? cdouble{1.0, 0.0}
          : std::exp(cdouble{0.0, -spec.k * spec.offset});
  std::vector<cdouble> constants(band + 1);
  for (int n = mu; n <= band; ++n) {
    constants[n] = phase * incident_constant(n, spec.m_inc, spec.k);
  }
  double tail = 0.0;
  std::vector<double> jn(band + 1);
  for (int node = 0; node < grid.total_nodes(); ++node) {
    specfun::spherical_bessel_j_array(band, spec.k * grid.nodes[node], jn);
    for (int n = mu; n <= band; ++n) {
      out.at(node, n, spec.m_inc) = constants[n] * jn[n];
    }
    tail = std::max(tail, std::abs(out.at(node, band, spec.m_inc)));
  }
  if (diag) diag->tail_coefficient = tail;
  return out;
}

namespace {

// 2 pi sqrt((2n+1)/4pi) int_{t0}^{1} P_n(t) dt for n = 0..band, the
// axisymmetric expansion of a polar-cap indicator.
void cap_coefficients(int band, double t0, std::vector<cdouble>& out) {
  std::vector<double> p(band + 2);
  specfun::legendre_p_array(band + 1, t0, p);
  out.resize(band + 1);
  out[0] = 2.0 * kPi * std::sqrt(1.0 / (4.0 * kPi)) * (1.0 - t0);
  for (int n = 1; n <= band; ++n) {
    out[n] = 2.0 * kPi * std::sqrt((2.0 * n + 1.0) / (4.0 * kPi)) *
             (p[n - 1] - p[n + 1]) / (2.0 * n + 1.0);
  }
}

void fill_centered_sphere(const ContrastSpec& spec, const RadialGrid& grid,
                          ModeField& out) {
  const double value = (1.0 - spec.n0 * spec.n0) * std::sqrt(4.0 * kPi);
  for (int node = 0; node < grid.total_nodes(); ++node) {
    if (grid.nodes[node] <= spec.radius) out.at(node, 0, 0) = value;
  }
}

void fill_shifted_sphere(const ContrastSpec& spec, const RadialGrid& grid,
                         int band, ModeField& out) {
  if (spec.radius > spec.offset) {
    throw InvalidGeometry("shifted sphere must satisfy 0 <= d - r");
  }
  const double c = 1.0 - spec.n0 * spec.n0;
  std::vector<cdouble> cap;
  for (int node = 0; node < grid.total_nodes(); ++node) {
    const double rho = grid.nodes[node];
    if (rho < spec.offset - spec.radius || rho > spec.offset + spec.radius) {
      continue;  // zero contrast outside the shell of intersection
    }
    const double t0 = std::clamp(
        (rho * rho + spec.offset * spec.offset - spec.radius * spec.radius) /
            (2.0 * rho * spec.offset),
        -1.0, 1.0);
    cap_coefficients(band, t0, cap);
    for (int n = 0; n <= band; ++n) out.at(node, n, 0) = c * cap[n];
  }
}

void fill_rotated_square(const ContrastSpec& spec, const RadialGrid& grid,
                         int band, ModeField& out) {
  const double c = 1.0 - spec.n0 * spec.n0;
  const auto& rule = specfun::gauss_legendre(4 * (band + 1));
  parallel_for(0, grid.total_nodes(), [&](std::int64_t lo, std::int64_t hi) {
    std::vector<double> p(band + 1);
    std::vector<double> acc(band + 1);
    for (int node = static_cast<int>(lo); node < static_cast<int>(hi); ++node) {
      const double rho = grid.nodes[node];
      if (rho > spec.radius) continue;
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        // revolved diamond: s + |z| <= radius with s = rho sin(theta)
        if (rho * (std::sqrt(1.0 - t * t) + std::abs(t)) > spec.radius) continue;
        specfun::legendre_p_array(band, t, p);
        for (int n = 0; n <= band; ++n) acc[n] += rule.weights[q] * p[n];
      }
      for (int n = 0; n <= band; ++n) {
        out.at(node, n, 0) =
            c * 2.0 * kPi * std::sqrt((2.0 * n + 1.0) / (4.0 * kPi)) * acc[n];
      }
    }
  });
}

void fill_hoelder(const ContrastSpec& spec, const RadialGrid& grid, int band,
                  ModeField& out) {
  const int mu = std::abs(spec.m_ref);
  if (band < mu) throw BandTooSmall("contrast band below |m_ref|");
  const double beta = spec.beta;
  // degree-independent factor of the closed form
  const double lncommon = std::log(kPi) - (beta + mu) * std::log(2.0) +
                          std::lgamma(1.0 + beta) - std::lgamma(1.0 + 0.5 * beta) -
                          std::lgamma(1.5 + 0.5 * beta);
  // running products over l, kept as log-magnitude + sign
  double lnprod = 0.0;
  double sgnprod = 1.0;
  for (int s = 0; s < mu; ++s) lnprod -= std::log(0.5 * beta + 1.5 + s);
  std::vector<cdouble> coef;
  for (int l = 0; mu + 2 * l <= band; ++l) {
    const int n = mu + 2 * l;
    if (l > 0) {
      const double f = 0.5 * beta - (l - 1);
      if (f == 0.0) break;  // series terminates for even integer beta
      lnprod += std::log(std::abs(f)) - std::log(0.5 * beta + 1.5 + (mu + l - 1));
      if (f < 0.0) sgnprod = -sgnprod;
    }
    const double lnrad = 0.5 * (std::log(2.0 * n + 1.0) +
                                std::lgamma(n + mu + 1.0) -
                                std::lgamma(n - mu + 1.0));
    // Condon-Shortley repair: the projection onto Y_n^{m_ref} carries
    // (-1)^mu for m_ref >= 0.
    const double cs = (spec.m_ref >= 0 && mu % 2 == 1) ? -1.0 : 1.0;
    coef.push_back(-cs * sgnprod * std::exp(lnrad + lncommon + lnprod));
  }
  for (int node = 0; node < grid.total_nodes(); ++node) {
    const double rho = grid.nodes[node];
    if (rho < 1.0 || rho > 2.0) continue;
    for (std::size_t l = 0; l < coef.size(); ++l) {
      out.at(node, mu + 2 * static_cast<int>(l), spec.m_ref) = coef[l];
    }
  }
}

}  // namespace

ModeField contrast_coefficients(const ContrastSpec& spec, const RadialGrid& grid,
                                int band) {
  ModeField out(band, grid.total_nodes());
  switch (spec.kind) {
    case ContrastKind::CenteredSphere:
      fill_centered_sphere(spec, grid, out);
      break;
    case ContrastKind::ShiftedSphere:
      fill_shifted_sphere(spec, grid, band, out);
      break;
    case ContrastKind::RotatedSquare:
      fill_rotated_square(spec, grid, band, out);
      break;
    case ContrastKind::Hoelder:
      fill_hoelder(spec, grid, band, out);
      break;
  }
  return out;
}

namespace {

// Radial factors of the exact homogeneous-sphere solution.
struct MieRadial {
  double k, n0, r;
  int mu, nmax;
  std::vector<cdouble> a, b, q;

  MieRadial(double k_, int m_inc, double n0_, double r_, int nmax_)
      : k(k_), n0(n0_), r(r_), mu(std::abs(m_inc)), nmax(nmax_) {
    a.resize(nmax + 1);
    b.resize(nmax + 1);
    q.resize(nmax + 1);
    const double xi = n0 * k * r;  // interior argument
    const double xe = k * r;       // exterior argument
    std::vector<double> ji(nmax + 2), je(nmax + 2), ye(nmax + 2);
    specfun::spherical_bessel_j_array(nmax + 1, xi, ji);
    specfun::spherical_bessel_j_array(nmax + 1, xe, je);
    specfun::spherical_bessel_y_array(nmax + 1, xe, ye);
    auto deriv = [](const std::vector<double>& f, int n, double x) {
      if (n == 0) return -f[1];  // f_0' = -f_1 for j and y alike
      return f[n - 1] - (n + 1.0) / x * f[n];
    };
    for (int n = mu; n <= nmax; ++n) {
      q[n] = incident_constant(n, m_inc, k);
      const cdouble h{je[n], ye[n]};
      const cdouble hp{deriv(je, n, xe), deriv(ye, n, xe)};
      const cdouble ja = ji[n];
      const cdouble jap = n0 * deriv(ji, n, xi);  // d/drho of j_n(n0 k rho) / k
      const cdouble rhs1 = q[n] * je[n];
      const cdouble rhs2 = q[n] * deriv(je, n, xe);
      // a ja - b h = rhs1 ; a jap - b hp = rhs2
      const cdouble det = -ja * hp + jap * h;
      const double scale = std::abs(ja * hp) + std::abs(jap * h);
      if (!(std::abs(det) > 0.0) || !std::isfinite(std::abs(det))) {
        // mode beyond double range: scattering is negligible there
        a[n] = q[n];
        b[n] = 0.0;
        continue;
      }
      if (std::abs(det) < 1e-14 * scale) {
        throw SingularMatching("interface matching is singular");
      }
      a[n] = (-rhs1 * hp + rhs2 * h) / det;
      b[n] = (ja * rhs2 - jap * rhs1) / det;
      if (!std::isfinite(std::abs(a[n])) || !std::isfinite(std::abs(b[n]))) {
        a[n] = q[n];
        b[n] = 0.0;
      }
    }
  }

  // coefficient of Y_n^{m_inc} at radius rho (switches branch at r)
  cdouble total(int n, double rho, std::span<const double> jn_int,
                std::span<const double> jn_ext,
                std::span<const double> yn_ext) const {
    if (rho <= r) return a[n] * jn_int[n];
    return q[n] * jn_ext[n] + b[n] * cdouble{jn_ext[n], yn_ext[n]};
  }
};

}  // namespace

ModeField exact_solution_sphere(double k, int m_inc, double n0, int band,
                                const RadialGrid& grid, double radius,
                                MieCoefficients* mie) {
  const int mu = std::abs(m_inc);
  if (band < mu) throw BandTooSmall("band below |m_inc|");
  MieRadial mr(k, m_inc, n0, radius, band);
  if (mie) {
    mie->k = k;
    mie->n0 = n0;
    mie->radius = radius;
    mie->m_inc = m_inc;
    mie->interior = mr.a;
    mie->scattered = mr.b;
    mie->q = mr.q;
  }
  ModeField out(band, grid.total_nodes());
  std::vector<double> ji(band + 1), je(band + 1), ye(band + 1);
  for (int node = 0; node < grid.total_nodes(); ++node) {
    const double rho = grid.nodes[node];
    if (rho <= radius) {
      specfun::spherical_bessel_j_array(band, n0 * k * rho, ji);
    } else {
      specfun::spherical_bessel_j_array(band, k * rho, je);
      specfun::spherical_bessel_y_array(band, k * rho, ye);
    }
    for (int n = mu; n <= band; ++n) {
      out.at(node, n, m_inc) = mr.total(n, rho, ji, je, ye);
    }
  }
  return out;
}

ModeField exact_solution_shifted(double k, int m_inc, double d, int band,
                                 const RadialGrid& grid, double n0,
                                 double radius) {
  const int mu = std::abs(m_inc);
  if (band < mu) throw BandTooSmall("band below |m_inc|");
  if (radius > d && d != 0.0) {
    throw InvalidGeometry("shifted sphere must satisfy 0 <= d - r");
  }
  // series band for pointwise evaluation of the centered solution
  const int neval =
      std::max(band, static_cast<int>(std::ceil(k * (grid.R + d))) + 60);
  MieRadial mr(k, m_inc, n0, radius, neval);
  // the field carries an interface kink across node spheres, so the
  // projection quadrature is oversampled well past the output band
  const auto& rule = specfun::gauss_legendre(4 * (band + 1));
  const int tc = static_cast<int>(rule.nodes.size());

  // the shifted field keeps the e^{i m_inc phi} dependence exactly, so a
  // single column is analyzed from its meridian values
  ModeField out(band, grid.total_nodes());
  parallel_for(0, grid.total_nodes(), [&](std::int64_t lo, std::int64_t hi) {
    std::vector<double> ji(neval + 1), je(neval + 1), ye(neval + 1);
    std::vector<double> s(neval + 1 - mu);
    std::vector<cdouble> g(tc);
    std::vector<double> sout(band + 1 - mu);
    for (int node = static_cast<int>(lo); node < static_cast<int>(hi); ++node) {
      const double rho = grid.nodes[node];
      for (int i = 0; i < tc; ++i) {
        const double t = rule.nodes[i];
        const double zp = rho * t - d;
        const double sp = rho * std::sqrt(std::max(0.0, 1.0 - t * t));
        const double rp = std::hypot(sp, zp);
        const double tp = rp > 0.0 ? std::clamp(zp / rp, -1.0, 1.0) : 1.0;
        if (rp <= radius) {
          specfun::spherical_bessel_j_array(neval, n0 * k * rp, ji);
        } else {
          specfun::spherical_bessel_j_array(neval, k * rp, je);
          specfun::spherical_bessel_y_array(neval, k * rp, ye);
        }
        specfun::legendre_s(neval, mu, tp, s);
        cdouble acc = 0.0;
        for (int n = mu; n <= neval; ++n) {
          acc += mr.total(n, rp, ji, je, ye) * s[n - mu];
        }
        g[i] = acc;
      }
      for (int i = 0; i < tc; ++i) {
        specfun::legendre_s(band, mu, rule.nodes[i], sout);
        const cdouble wg = 2.0 * kPi * rule.weights[i] * g[i];
        for (int n = mu; n <= band; ++n) {
          out.at(node, n, m_inc) += wg * sout[n - mu];
        }
      }
    }
  });
  return out;
}

}  // namespace lsharm
