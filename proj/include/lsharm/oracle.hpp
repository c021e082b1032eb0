#ifndef LSHARM_ORACLE_HPP
#define LSHARM_ORACLE_HPP

#include <span>
#include <utility>
#include <vector>

#include "lsharm/mode_field.hpp"

namespace lsharm::oracle {

// Slow, independent brute-force evaluators for tests. Nothing in here uses
// the addition theorem, the transforms, or the moment machinery, so
// agreement with the fast path is evidence rather than tautology.

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Field samples on a tensor quadrature grid over the ball of radius R:
/// Gauss-Legendre in radius and colatitude, uniform in longitude.
struct DenseField {
  double R = 0.0;
  std::vector<double> rho, wr;  // radial nodes / jacobian-scaled weights
  std::vector<double> t, wt;    // cos(theta) nodes / weights
  int phi_count = 0;
  std::vector<cdouble> values;  // [ir][it][ip]

  static DenseField make_grid(double R, int nr, int nt, int np);

  std::size_t index(int ir, int it, int ip) const {
    return (static_cast<std::size_t>(ir) * t.size() + it) * phi_count + ip;
  }
  Vec3 point(int ir, int it, int ip) const;
  /// full 3D quadrature weight including the rho^2 volume factor
  double weight(int ir, int it, int ip) const;
};

/// u(x) + k^2 sum_q w_q Phi(x, y_q) u(y_q) m(y_q) at the given targets by
/// direct summation; targets must avoid the source nodes (1/|x-y|).
std::vector<cdouble> ls_apply_dense(const DenseField& u, const DenseField& m,
                                    double k, std::span<const Vec3> targets,
                                    std::span<const cdouble> u_at_targets);

/// (closed-form Green's function, N-term addition-theorem series) for
/// separated radii; the series is assembled from the library's Bessel and
/// spherical-harmonic values, validating their joint conventions.
std::pair<cdouble, cdouble> addition_theorem_check(const Vec3& x, const Vec3& y,
                                                   double k, int N);

/// Y_n^m at a physical direction (helper for building test fields without
/// the transform machinery).
cdouble harmonic_at(int n, int m, double theta, double phi);

}  // namespace lsharm::oracle

#endif
