#ifndef LSHARM_RADIAL_GRID_HPP
#define LSHARM_RADIAL_GRID_HPP

#include <span>
#include <vector>

#include "lsharm/mode_field.hpp"

namespace lsharm {

/// [0, R] split into Ni equal intervals, each carrying Nd Chebyshev points
/// of the first kind (ascending). Total node count Ni*Nd.
struct RadialGrid {
  double R = 0.0;
  int Ni = 0;
  int Nd = 0;
  std::vector<double> nodes;  // ascending across the union

  static RadialGrid build(double R, int Ni, int Nd);

  int total_nodes() const { return Ni * Nd; }
  double interval_left(int j) const { return R * j / Ni; }
  double interval_right(int j) const { return R * (j + 1) / Ni; }
  double node(int j, int k) const { return nodes[j * Nd + k]; }
  int node_index(int j, int k) const { return j * Nd + k; }
  int interval_of_node(int idx) const { return idx / Nd; }

  /// Interpolating Chebyshev coefficients from values at one interval's
  /// nodes; evaluating the fit at the nodes reproduces the inputs.
  void chebyshev_fit(std::span<const cdouble> values,
                     std::span<cdouble> coeffs) const;

  /// Fit coefficients for every interval of a radial profile sampled at all
  /// grid nodes (interval-major, Nd coefficients per interval).
  std::vector<cdouble> chebyshev_fit_all(std::span<const cdouble> profile) const;

 private:
  std::vector<double> fit_;  // Nd x Nd, row-major: coeff_l = sum_k fit(l,k) v_k
};

}  // namespace lsharm

#endif
