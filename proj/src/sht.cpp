#include "lsharm/sht.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "lsharm/errors.hpp"
#include "lsharm/parallel.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

namespace {

using Eigen::MatrixXcd;
using RowMajorXcd =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(i m phi_j) on the uniform longitude grid; all entries are powers of
// the (2L+1)-th root of unity.
MatrixXcd phase_matrix(std::span<const int> cols, int phi_count, bool conjugated,
                       double scale) {
  std::vector<cdouble> omega(phi_count);
  for (int p = 0; p < phi_count; ++p) {
    const double a = kTwoPi * p / phi_count;
    omega[p] = {std::cos(a), std::sin(a)};
  }
  MatrixXcd e(static_cast<int>(cols.size()), phi_count);
  for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
    const long long m = conjugated ? -cols[ci] : cols[ci];
    for (int j = 0; j < phi_count; ++j) {
      long long p = (m * j) % phi_count;
      if (p < 0) p += phi_count;
      e(ci, j) = omega[static_cast<int>(p)] * scale;
    }
  }
  return e;
}

// Colatitude part of Y_n^m for one order across all grid colatitudes,
// sign included for negative m: rows n = |m|..band, columns theta nodes.
MatrixXcd legendre_block(const AngularGrid& g, int band, int m) {
  const int am = std::abs(m);
  const int ncount = band - am + 1;
  const double sign = (m < 0 && am % 2 == 1) ? -1.0 : 1.0;
  MatrixXcd blk(ncount, g.theta_count());
  std::vector<double> col(ncount);
  for (int i = 0; i < g.theta_count(); ++i) {
    specfun::legendre_s(band, am, g.t[i], col);
    for (int idx = 0; idx < ncount; ++idx) blk(idx, i) = sign * col[idx];
  }
  return blk;
}

int chunk_nodes(const AngularGrid& g, int nodes) {
  // bound the per-chunk value buffer to ~64 MB while keeping enough chunks
  // to feed the worker pool
  const std::int64_t per_node = static_cast<std::int64_t>(g.points());
  int by_mem = static_cast<int>(std::max<std::int64_t>(1, (4 << 20) / per_node));
  int by_thread = (nodes + worker_threads() - 1) / worker_threads();
  return std::max(1, std::min(by_mem, by_thread));
}

}  // namespace

AngularGrid AngularGrid::make(int band) {
  AngularGrid g;
  g.band = band;
  const auto& rule = specfun::gauss_legendre(band + 1);
  g.t = rule.nodes;
  g.weights = rule.weights;
  g.theta.resize(g.t.size());
  for (std::size_t i = 0; i < g.t.size(); ++i) g.theta[i] = std::acos(g.t[i]);
  return g;
}

double AngularGrid::phi(int j) const { return kTwoPi * j / phi_count(); }

std::vector<int> all_columns(int band) {
  std::vector<int> cols(2 * band + 1);
  for (int m = -band; m <= band; ++m) cols[m + band] = m;
  return cols;
}

Sht::Sht(AngularGrid grid) : grid_(std::move(grid)) {}

namespace {

// One node range of the synthesis pipeline: coefficients -> values.
void synth_range(const AngularGrid& g, const ModeField& f,
                 std::span<const int> cols, const MatrixXcd& e, int node0,
                 int node1, cdouble* values) {
  const int tc = g.theta_count();
  const int pc = g.phi_count();
  const int chunk = node1 - node0;
  MatrixXcd gmat = MatrixXcd::Zero(static_cast<std::int64_t>(chunk) * tc,
                                   static_cast<int>(cols.size()));
  for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
    const int m = cols[ci];
    const int am = std::abs(m);
    if (am > f.band()) continue;
    const int ncount = f.band() - am + 1;
    MatrixXcd u(chunk, ncount);
    for (int r = 0; r < chunk; ++r) {
      for (int idx = 0; idx < ncount; ++idx) {
        u(r, idx) = f.at(node0 + r, am + idx, m);
      }
    }
    const MatrixXcd blk = legendre_block(g, f.band(), m);
    Eigen::Map<MatrixXcd>(gmat.col(ci).data(), tc, chunk) =
        (u * blk).transpose();
  }
  Eigen::Map<RowMajorXcd>(values, static_cast<std::int64_t>(chunk) * tc, pc) =
      gmat * e;
}

// One node range of the analysis pipeline: values -> coefficients.
void analyze_range(const AngularGrid& g, std::span<const int> cols, int band,
                   const MatrixXcd& e2, int node0, int node1,
                   const cdouble* values, ModeField& out) {
  const int tc = g.theta_count();
  const int pc = g.phi_count();
  const int chunk = node1 - node0;
  const Eigen::Map<const RowMajorXcd> vmap(
      values, static_cast<std::int64_t>(chunk) * tc, pc);
  MatrixXcd gmat = vmap * e2.transpose();  // e2 rows are orders, columns phi
  for (int ci = 0; ci < static_cast<int>(cols.size()); ++ci) {
    const int m = cols[ci];
    const int am = std::abs(m);
    if (am > band) continue;
    const int ncount = band - am + 1;
    MatrixXcd swt(tc, ncount);
    {
      const MatrixXcd blk = legendre_block(g, band, m);
      for (int i = 0; i < tc; ++i) {
        for (int idx = 0; idx < ncount; ++idx) {
          swt(i, idx) = g.weights[i] * blk(idx, i);
        }
      }
    }
    const Eigen::Map<const MatrixXcd> gcol(gmat.col(ci).data(), tc, chunk);
    MatrixXcd c = gcol.transpose() * swt;
    for (int r = 0; r < chunk; ++r) {
      for (int idx = 0; idx < ncount; ++idx) {
        out.at(node0 + r, am + idx, m) = c(r, idx);
      }
    }
  }
}

}  // namespace

void Sht::synthesize(const ModeField& f, std::span<const int> cols,
                     std::span<cdouble> values) const {
  if (f.band() > grid_.band) {
    throw BandMismatch("synthesize: coefficient band exceeds grid band");
  }
  const int nodes = f.radial_nodes();
  if (static_cast<std::int64_t>(values.size()) !=
      static_cast<std::int64_t>(nodes) * grid_.points()) {
    throw BandMismatch("synthesize: value buffer size mismatch");
  }
  const MatrixXcd e = phase_matrix(cols, grid_.phi_count(), false, 1.0);
  const int chunk = chunk_nodes(grid_, nodes);
  const int nchunks = (nodes + chunk - 1) / chunk;
  parallel_for(0, nchunks, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t c = lo; c < hi; ++c) {
      const int n0 = static_cast<int>(c) * chunk;
      const int n1 = std::min(nodes, n0 + chunk);
      synth_range(grid_, f, cols, e, n0, n1,
                  values.data() + static_cast<std::int64_t>(n0) * grid_.points());
    }
  });
}

std::vector<cdouble> Sht::synthesize(const ModeField& f) const {
  std::vector<cdouble> values(static_cast<std::size_t>(f.radial_nodes()) *
                              grid_.points());
  const auto cols = all_columns(f.band());
  synthesize(f, cols, values);
  return values;
}

void Sht::analyze(std::span<const cdouble> values, int radial_nodes, int band,
                  std::span<const int> cols, ModeField& out) const {
  if (band > grid_.band) {
    throw BandMismatch("analyze: requested band exceeds grid band");
  }
  if (static_cast<std::int64_t>(values.size()) !=
      static_cast<std::int64_t>(radial_nodes) * grid_.points()) {
    throw BandMismatch("analyze: value buffer size mismatch");
  }
  const MatrixXcd e2 = phase_matrix(cols, grid_.phi_count(), true,
                                    kTwoPi / grid_.phi_count());
  const int chunk = chunk_nodes(grid_, radial_nodes);
  const int nchunks = (radial_nodes + chunk - 1) / chunk;
  parallel_for(0, nchunks, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t c = lo; c < hi; ++c) {
      const int n0 = static_cast<int>(c) * chunk;
      const int n1 = std::min(radial_nodes, n0 + chunk);
      analyze_range(grid_, cols, band, e2, n0, n1,
                    values.data() + static_cast<std::int64_t>(n0) * grid_.points(),
                    out);
    }
  });
}

ModeField Sht::analyze(std::span<const cdouble> values, int radial_nodes,
                       int band) const {
  ModeField out(band, radial_nodes);
  const auto cols = all_columns(band);
  analyze(values, radial_nodes, band, cols, out);
  return out;
}

ModeField Sht::pointwise_product_project(const ModeField& u, const ModeField& m,
                                         int out_band) const {
  const auto u_cols = all_columns(u.band());
  const auto m_cols = all_columns(m.band());
  const auto out_cols = all_columns(out_band);
  ModeField out(out_band, u.radial_nodes());
  product_project(u, u_cols, m, m_cols, out_band, out_cols, out);
  return out;
}

void Sht::product_project(const ModeField& u, std::span<const int> u_cols,
                          const ModeField& m, std::span<const int> m_cols,
                          int out_band, std::span<const int> out_cols,
                          ModeField& out) const {
  if (u.band() + m.band() > grid_.band) {
    throw BandMismatch("product: grid band below u band + m band");
  }
  if (out_band > grid_.band) {
    throw BandMismatch("product: output band exceeds grid band");
  }
  if (u.radial_nodes() != m.radial_nodes()) {
    throw BandMismatch("product: radial node count mismatch");
  }
  const int nodes = u.radial_nodes();
  const MatrixXcd eu = phase_matrix(u_cols, grid_.phi_count(), false, 1.0);
  const MatrixXcd em = phase_matrix(m_cols, grid_.phi_count(), false, 1.0);
  const MatrixXcd e2 = phase_matrix(out_cols, grid_.phi_count(), true,
                                    kTwoPi / grid_.phi_count());
  const int chunk = chunk_nodes(grid_, nodes);
  const int nchunks = (nodes + chunk - 1) / chunk;
  parallel_for(0, nchunks, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<cdouble> vu, vm;
    for (std::int64_t c = lo; c < hi; ++c) {
      const int n0 = static_cast<int>(c) * chunk;
      const int n1 = std::min(nodes, n0 + chunk);
      const std::int64_t count =
          static_cast<std::int64_t>(n1 - n0) * grid_.points();
      vu.resize(count);
      vm.resize(count);
      synth_range(grid_, u, u_cols, eu, n0, n1, vu.data());
      synth_range(grid_, m, m_cols, em, n0, n1, vm.data());
      for (std::int64_t q = 0; q < count; ++q) vu[q] *= vm[q];
      analyze_range(grid_, out_cols, out_band, e2, n0, n1, vu.data(), out);
    }
  });
}

}  // namespace lsharm
