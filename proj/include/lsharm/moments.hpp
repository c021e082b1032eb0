#ifndef LSHARM_MOMENTS_HPP
#define LSHARM_MOMENTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lsharm/radial_grid.hpp"

namespace lsharm {

/// Precomputed Bessel-weighted Chebyshev moments. Each radial interval is
/// cut at its Chebyshev nodes into Nd+1 sub-segments (left edge -> node 1,
/// node k -> node k+1, node Nd -> right edge). Per degree n, interval j,
/// segment s and Chebyshev degree l the table holds
///
///   J: int (rho/r_s)^{n+2} jt_n(k rho) T_l(rho) drho   (r_s = right endpoint)
///   Y: int (l_s/rho)^{n-1} yt_n(k rho) T_l(rho) drho   (l_s = left endpoint)
///
/// with the factored power recorded as a log-scale per (n, j, s). The
/// per-segment normalization keeps stored values O(segment length) even for
/// the first interval at large n, where an interval-level scale would
/// underflow.
class MomentTable {
 public:
  double k = 0.0;
  double R = 0.0;
  int Ni = 0;
  int Nd = 0;
  int F = 0;

  /// order_multiplier scales the quadrature order (validation hook for the
  /// doubled-order accuracy check).
  static MomentTable precompute(const RadialGrid& grid, double k, int F,
                                int order_multiplier = 1);

  int segments_per_interval() const { return Nd + 1; }

  double jmom(int n, int j, int s, int l) const { return jmom_[vidx(n, j, s, l)]; }
  double ymom(int n, int j, int s, int l) const { return ymom_[vidx(n, j, s, l)]; }
  double jlog(int n, int j, int s) const { return jlog_[sidx(n, j, s)]; }
  double ylog(int n, int j, int s) const { return ylog_[sidx(n, j, s)]; }

  /// Segment endpoints of interval j: u_j^0, rho_1..rho_Nd, u_j^1.
  double segment_left(const RadialGrid& g, int j, int s) const;
  double segment_right(const RadialGrid& g, int j, int s) const;

  bool matches(const RadialGrid& grid, double k_, int F_) const;

  /// Versioned binary cache (little-endian, checksummed). Returns false if
  /// the file cannot be written.
  bool save(const std::string& path) const;
  /// Loads only if magic/version/key/checksum all match.
  static std::optional<MomentTable> load(const std::string& path);

  /// Key-specific cache file name derived from a user-chosen stem.
  std::string cache_name(const std::string& stem) const;

 private:
  std::size_t sidx(int n, int j, int s) const {
    return (static_cast<std::size_t>(n) * Ni + j) * segments_per_interval() + s;
  }
  std::size_t vidx(int n, int j, int s, int l) const {
    return sidx(n, j, s) * Nd + l;
  }

  std::vector<double> jmom_, ymom_;  // values
  std::vector<double> jlog_, ylog_;  // exponents per (n, j, s)

  friend class MomentTableIO;
};

}  // namespace lsharm

#endif
