#ifndef LSHARM_LS_OPERATOR_HPP
#define LSHARM_LS_OPERATOR_HPP

#include <memory>
#include <vector>

#include "lsharm/kernel.hpp"
#include "lsharm/mode_field.hpp"
#include "lsharm/moments.hpp"
#include "lsharm/radial_grid.hpp"
#include "lsharm/sht.hpp"

namespace lsharm {

/// One scattering configuration: wavenumber, band limit, radial grid and
/// the spectral representations of the contrast (band 2F) and the incident
/// field (band F) at the radial nodes.
struct ProblemSpec {
  double k = 0.0;
  int band = 0;
  RadialGrid grid;
  ModeField contrast;
  ModeField incident;
};

/// The matrix-free system operator u -> u - i K[u]: angular product
/// projection per radial node, Chebyshev fit + cumulative moments + kernel
/// assembly per (n, m) mode.
class ForwardOperator {
 public:
  /// moments must match (k, grid) and carry degrees to at least the band.
  /// With restrict_columns the angular work runs only on the azimuthal
  /// orders that are actually coupled (exact: untouched orders are zero).
  ForwardOperator(const ProblemSpec& spec, const MomentTable& moments,
                  bool restrict_columns = true);

  /// u - i K[u]
  ModeField apply(const ModeField& u) const;
  /// K[u] alone
  ModeField apply_kernel(const ModeField& u) const;

  /// Smallest order set containing cols that is closed under the operator.
  std::vector<int> closure_columns(std::vector<int> cols) const;

  const ProblemSpec& spec() const { return spec_; }
  const Sht& sht() const { return *sht_; }
  const KernelCoefficients& kernel_coefficients(int n, int node) const {
    return kcoef_[static_cast<std::size_t>(n) * spec_.grid.total_nodes() + node];
  }

 private:
  ProblemSpec spec_;
  const MomentTable* moments_;
  std::unique_ptr<Sht> sht_;
  std::vector<int> contrast_cols_;
  std::vector<KernelCoefficients> kcoef_;
  bool restrict_;
};

/// Relative sup-norm distance between the synthesized fields over all
/// radial nodes and the angular grid of the common band.
double field_error(const ModeField& u, const ModeField& reference);

}  // namespace lsharm

#endif
