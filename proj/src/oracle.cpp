#include "lsharm/oracle.hpp"

#include <cmath>
#include <numbers>

#include "lsharm/errors.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm::oracle {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Spherical {
  double r, theta, phi;
};

Spherical to_spherical(const Vec3& p) {
  const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  return {r, std::atan2(std::hypot(p.x, p.y), p.z), std::atan2(p.y, p.x)};
}
}  // namespace

DenseField DenseField::make_grid(double R, int nr, int nt, int np) {
  DenseField f;
  f.R = R;
  const auto& rrule = specfun::gauss_legendre(nr);
  f.rho.resize(nr);
  f.wr.resize(nr);
  for (int i = 0; i < nr; ++i) {
    f.rho[i] = 0.5 * R * (rrule.nodes[i] + 1.0);
    f.wr[i] = 0.5 * R * rrule.weights[i];
  }
  const auto& trule = specfun::gauss_legendre(nt);
  f.t = trule.nodes;
  f.wt = trule.weights;
  f.phi_count = np;
  f.values.assign(static_cast<std::size_t>(nr) * nt * np, cdouble{0.0, 0.0});
  return f;
}

Vec3 DenseField::point(int ir, int it, int ip) const {
  const double st = std::sqrt(1.0 - t[it] * t[it]);
  const double phi = kTwoPi * ip / phi_count;
  return {rho[ir] * st * std::cos(phi), rho[ir] * st * std::sin(phi),
          rho[ir] * t[it]};
}

double DenseField::weight(int ir, int it, int ip) const {
  (void)ip;
  return wr[ir] * rho[ir] * rho[ir] * wt[it] * (kTwoPi / phi_count);
}

std::vector<cdouble> ls_apply_dense(const DenseField& u, const DenseField& m,
                                    double k, std::span<const Vec3> targets,
                                    std::span<const cdouble> u_at_targets) {
  std::vector<cdouble> out(targets.size());
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const Vec3 x = targets[q];
    cdouble acc = 0.0;
    for (std::size_t ir = 0; ir < u.rho.size(); ++ir) {
      for (std::size_t it = 0; it < u.t.size(); ++it) {
        for (int ip = 0; ip < u.phi_count; ++ip) {
          const std::size_t idx = u.index(static_cast<int>(ir),
                                          static_cast<int>(it), ip);
          const cdouble um = u.values[idx] * m.values[idx];
          if (um == cdouble{0.0, 0.0}) continue;
          const Vec3 y = u.point(static_cast<int>(ir), static_cast<int>(it), ip);
          const double d = std::sqrt((x.x - y.x) * (x.x - y.x) +
                                     (x.y - y.y) * (x.y - y.y) +
                                     (x.z - y.z) * (x.z - y.z));
          const cdouble green =
              std::exp(cdouble{0.0, k * d}) / (4.0 * std::numbers::pi * d);
          acc += u.weight(static_cast<int>(ir), static_cast<int>(it), ip) *
                 green * um;
        }
      }
    }
    out[q] = u_at_targets[q] + k * k * acc;
  }
  return out;
}

cdouble harmonic_at(int n, int m, double theta, double phi) {
  const int am = std::abs(m);
  const auto s = specfun::legendre_s(n, am, std::cos(theta));
  double v = s[n - am];
  if (m < 0 && am % 2 == 1) v = -v;
  return v * std::exp(cdouble{0.0, m * phi});
}

std::pair<cdouble, cdouble> addition_theorem_check(const Vec3& x, const Vec3& y,
                                                   double k, int N) {
  const Spherical sx = to_spherical(x);
  const Spherical sy = to_spherical(y);
  if (std::abs(sx.r - sy.r) < 1e-6) {
    throw NonSeparated("addition theorem requires separated radii");
  }
  const Spherical& gt = sx.r > sy.r ? sx : sy;  // greater radius
  const Spherical& lt = sx.r > sy.r ? sy : sx;

  const double d = std::sqrt((x.x - y.x) * (x.x - y.x) +
                             (x.y - y.y) * (x.y - y.y) +
                             (x.z - y.z) * (x.z - y.z));
  const cdouble direct =
      std::exp(cdouble{0.0, k * d}) / (4.0 * std::numbers::pi * d);

  std::vector<double> jl(N + 1), jg(N + 1), yg(N + 1);
  specfun::spherical_bessel_j_array(N, k * lt.r, jl);
  specfun::spherical_bessel_j_array(N, k * gt.r, jg);
  specfun::spherical_bessel_y_array(N, k * gt.r, yg);
  cdouble series = 0.0;
  for (int n = 0; n <= N; ++n) {
    const cdouble hn{jg[n], yg[n]};
    cdouble msum = 0.0;
    for (int m = -n; m <= n; ++m) {
      msum += harmonic_at(n, m, gt.theta, gt.phi) *
              std::conj(harmonic_at(n, m, lt.theta, lt.phi));
    }
    series += hn * jl[n] * msum;
  }
  series *= cdouble{0.0, k};
  return {direct, series};
}

}  // namespace lsharm::oracle
