#ifndef LSHARM_SHT_HPP
#define LSHARM_SHT_HPP

#include <span>
#include <vector>

#include "lsharm/mode_field.hpp"

namespace lsharm {

/// Minimal exact-quadrature angular grid at band L: Gauss-Legendre
/// colatitudes t_q = cos(theta_q), q = 0..L, and 2L+1 uniform longitudes.
/// Integrates products Y_n^m conj(Y_n'^m') exactly for n, n' <= L.
struct AngularGrid {
  int band = 0;
  std::vector<double> t;        // ascending cos(theta)
  std::vector<double> theta;
  std::vector<double> weights;  // Gauss-Legendre weights

  static AngularGrid make(int band);

  int theta_count() const { return band + 1; }
  int phi_count() const { return 2 * band + 1; }
  double phi(int j) const;
  /// points per radial node
  int points() const { return theta_count() * phi_count(); }
};

/// All 2B+1 orders -B..B.
std::vector<int> all_columns(int band);

/// Spherical harmonic transforms on a fixed grid. Values are laid out
/// [node][theta][phi]; transforms over distinct radial nodes are
/// independent and run on the worker pool.
class Sht {
 public:
  explicit Sht(AngularGrid grid);

  const AngularGrid& grid() const { return grid_; }

  /// f(theta_i, phi_j) = sum c_n^m Y_n^m, restricted to the given orders.
  /// Throws BandMismatch if the field band exceeds the grid band.
  void synthesize(const ModeField& f, std::span<const int> cols,
                  std::span<cdouble> values) const;
  std::vector<cdouble> synthesize(const ModeField& f) const;

  /// c_n^m = sum_{i,j} w_i 2pi/(2L+1) f conj(Y_n^m); exact to roundoff for
  /// band-limited input of degree <= grid band.
  void analyze(std::span<const cdouble> values, int radial_nodes, int band,
               std::span<const int> cols, ModeField& out) const;
  ModeField analyze(std::span<const cdouble> values, int radial_nodes,
                    int band) const;

  /// Coefficients of the pointwise product u*m: synthesize both factors,
  /// multiply on the grid, analyze back at out_band. Exact when
  /// grid band >= u band + m band.
  ModeField pointwise_product_project(const ModeField& u, const ModeField& m,
                                      int out_band) const;

  /// Column-restricted, node-chunked product pipeline (same arithmetic as
  /// pointwise_product_project for the selected orders).
  void product_project(const ModeField& u, std::span<const int> u_cols,
                       const ModeField& m, std::span<const int> m_cols,
                       int out_band, std::span<const int> out_cols,
                       ModeField& out) const;

 private:
  AngularGrid grid_;
};

}  // namespace lsharm

#endif
