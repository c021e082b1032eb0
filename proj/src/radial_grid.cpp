#include "lsharm/radial_grid.hpp"

#include <cassert>
#include <cmath>

#include "lsharm/errors.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

RadialGrid RadialGrid::build(double R, int Ni, int Nd) {
  if (!(R > 0.0) || Ni < 1 || Nd < 2) {
    throw InvalidConfig("radial grid requires R > 0, Ni >= 1, Nd >= 2");
  }
  RadialGrid g;
  g.R = R;
  g.Ni = Ni;
  g.Nd = Nd;
  g.nodes.reserve(static_cast<std::size_t>(Ni) * Nd);
  for (int j = 0; j < Ni; ++j) {
    const auto pts =
        specfun::chebyshev_points(Nd, g.interval_left(j), g.interval_right(j));
    g.nodes.insert(g.nodes.end(), pts.begin(), pts.end());
  }
  // discrete orthogonality of first-kind points: c_l = (2-d_l0)/Nd sum T_l(x_k) v_k
  g.fit_.resize(static_cast<std::size_t>(Nd) * Nd);
  std::vector<double> tvals(Nd);
  for (int k = 0; k < Nd; ++k) {
    const double s = std::cos((2.0 * (Nd - k) - 1.0) * std::acos(-1.0) / (2.0 * Nd));
    specfun::chebyshev_values(Nd - 1, s, tvals);
    for (int l = 0; l < Nd; ++l) {
      g.fit_[static_cast<std::size_t>(l) * Nd + k] =
          (l == 0 ? 1.0 : 2.0) / Nd * tvals[l];
    }
  }
  return g;
}

void RadialGrid::chebyshev_fit(std::span<const cdouble> values,
                               std::span<cdouble> coeffs) const {
  assert(static_cast<int>(values.size()) == Nd);
  assert(static_cast<int>(coeffs.size()) == Nd);
  for (int l = 0; l < Nd; ++l) {
    cdouble acc = 0.0;
    const double* row = fit_.data() + static_cast<std::size_t>(l) * Nd;
    for (int k = 0; k < Nd; ++k) acc += row[k] * values[k];
    coeffs[l] = acc;
  }
}

std::vector<cdouble> RadialGrid::chebyshev_fit_all(
    std::span<const cdouble> profile) const {
  assert(static_cast<int>(profile.size()) == total_nodes());
  std::vector<cdouble> coeffs(profile.size());
  for (int j = 0; j < Ni; ++j) {
    chebyshev_fit(profile.subspan(static_cast<std::size_t>(j) * Nd, Nd),
                  std::span<cdouble>(coeffs).subspan(
                      static_cast<std::size_t>(j) * Nd, Nd));
  }
  return coeffs;
}

}  // namespace lsharm
