#ifndef LSHARM_MODE_FIELD_HPP
#define LSHARM_MODE_FIELD_HPP

#include <cassert>
#include <complex>
#include <span>
#include <vector>

namespace lsharm {

using cdouble = std::complex<double>;

/// Triangular array of spectral coefficients c_n^m(rho_k): degrees
/// 0 <= n <= band, orders -n <= m <= n, sampled at a set of radial nodes.
/// Node-major storage; (F+1)^2 coefficients per node.
class ModeField {
 public:
  ModeField() = default;
  ModeField(int band, int radial_nodes)
      : band_(band),
        nodes_(radial_nodes),
        data_(static_cast<std::size_t>(radial_nodes) * (band + 1) * (band + 1)) {}

  int band() const { return band_; }
  int radial_nodes() const { return nodes_; }
  int coeffs_per_node() const { return (band_ + 1) * (band_ + 1); }

  static int tri_index(int n, int m) { return n * n + n + m; }

  cdouble& at(int node, int n, int m) {
    assert(n <= band_ && std::abs(m) <= n && node < nodes_);
    return data_[static_cast<std::size_t>(node) * coeffs_per_node() + tri_index(n, m)];
  }
  cdouble at(int node, int n, int m) const {
    assert(n <= band_ && std::abs(m) <= n && node < nodes_);
    return data_[static_cast<std::size_t>(node) * coeffs_per_node() + tri_index(n, m)];
  }

  std::span<cdouble> node_slice(int node) {
    return {data_.data() + static_cast<std::size_t>(node) * coeffs_per_node(),
            static_cast<std::size_t>(coeffs_per_node())};
  }
  std::span<const cdouble> node_slice(int node) const {
    return {data_.data() + static_cast<std::size_t>(node) * coeffs_per_node(),
            static_cast<std::size_t>(coeffs_per_node())};
  }

  std::span<cdouble> data() { return data_; }
  std::span<const cdouble> data() const { return data_; }

  /// Columns (orders m) holding at least one nonzero coefficient, sorted.
  std::vector<int> nonzero_columns(double threshold = 0.0) const;

  /// max_{node,n,m} |c_n^m - (-1)^m conj(c_n^{-m})|; zero for the expansion
  /// of a real-valued field.
  double conjugation_defect() const;

  double max_abs() const;

  /// Same band/node layout filled with this field's coefficients; bands may
  /// only grow.
  ModeField padded_to(int band) const;

 private:
  int band_ = 0;
  int nodes_ = 0;
  std::vector<cdouble> data_;
};

}  // namespace lsharm

#endif
