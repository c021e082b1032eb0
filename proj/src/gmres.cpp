#include "lsharm/gmres.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>

#include "lsharm/errors.hpp"

namespace lsharm {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Index map between a ModeField and the packed solution vector over the
// active azimuthal orders.
struct Packing {
  int band = 0;
  int nodes = 0;
  std::vector<int> cols;
  std::ptrdiff_t dim = 0;

  Packing(int band_, int nodes_, std::vector<int> cols_)
      : band(band_), nodes(nodes_), cols(std::move(cols_)) {
    for (int m : cols) {
      dim += static_cast<std::ptrdiff_t>(band - std::abs(m) + 1) * nodes;
    }
  }

  VectorXcd pack(const ModeField& f) const {
    VectorXcd v(dim);
    std::ptrdiff_t q = 0;
    for (int m : cols) {
      for (int n = std::abs(m); n <= band; ++n) {
        for (int node = 0; node < nodes; ++node) v[q++] = f.at(node, n, m);
      }
    }
    return v;
  }

  ModeField unpack(const VectorXcd& v) const {
    ModeField f(band, nodes);
    std::ptrdiff_t q = 0;
    for (int m : cols) {
      for (int n = std::abs(m); n <= band; ++n) {
        for (int node = 0; node < nodes; ++node) f.at(node, n, m) = v[q++];
      }
    }
    return f;
  }
};

}  // namespace

std::pair<ModeField, SolveReport> solve(const ForwardOperator& op,
                                        const ModeField& rhs,
                                        const SolveOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidConfig("solve: tol must be positive");
  const auto t_setup = std::chrono::steady_clock::now();
  const Packing pk(rhs.band(), rhs.radial_nodes(),
                   op.closure_columns(rhs.nonzero_columns()));

  SolveReport report;
  const VectorXcd b = pk.pack(rhs);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    return {ModeField(rhs.band(), rhs.radial_nodes()), report};
  }

  auto apply = [&](const VectorXcd& v) {
    return pk.pack(op.apply(pk.unpack(v)));
  };

  const int restart = std::max(1, options.restart);
  VectorXcd x = VectorXcd::Zero(pk.dim);
  MatrixXcd v(pk.dim, restart + 1);
  MatrixXcd h = MatrixXcd::Zero(restart + 1, restart);
  VectorXcd giv_c(restart);           // complex cosine of each rotation
  std::vector<double> giv_s(restart);  // real sine (subdiagonals are real)
  VectorXcd g(restart + 1);

  const auto t0 = std::chrono::steady_clock::now();
  report.setup_seconds = std::chrono::duration<double>(t0 - t_setup).count();
  bool done = false;
  bool breakdown = false;
  bool first_cycle = true;
  double rel = 1.0;
  while (!done) {
    const VectorXcd r = first_cycle ? b : VectorXcd(b - apply(x));
    first_cycle = false;
    rel = r.norm() / bnorm;
    if (rel <= options.tol || report.iterations >= options.max_iter) break;
    v.col(0) = r / r.norm();
    g.setZero();
    g[0] = r.norm();
    int j = 0;
    while (j < restart) {
      VectorXcd w = apply(v.col(j));
      ++report.iterations;
      for (int i = 0; i <= j; ++i) {
        const cdouble hij = v.col(i).dot(w);  // conjugate-linear in v
        h(i, j) = hij;
        w -= hij * v.col(i);
      }
      const double wnorm = w.norm();
      for (int i = 0; i < j; ++i) {
        const cdouble top = std::conj(giv_c[i]) * h(i, j) + giv_s[i] * h(i + 1, j);
        h(i + 1, j) = -giv_s[i] * h(i, j) + giv_c[i] * h(i + 1, j);
        h(i, j) = top;
      }
      const double rho = std::sqrt(std::norm(h(j, j)) + wnorm * wnorm);
      if (rho < 1e-300) {
        // Hessenberg degeneracy: the new column adds nothing; return the
        // best iterate over the columns built so far.
        breakdown = true;
        done = true;
        break;
      }
      giv_c[j] = h(j, j) / rho;
      giv_s[j] = wnorm / rho;
      h(j, j) = rho;
      g[j + 1] = -giv_s[j] * g[j];
      g[j] = std::conj(giv_c[j]) * g[j];
      rel = std::abs(g[j + 1]) / bnorm;
      report.residual_history.push_back(rel);
      ++j;
      if (rel <= options.tol) {
        done = true;
        break;
      }
      if (report.iterations >= options.max_iter) {
        done = true;
        break;
      }
      if (j < restart) v.col(j) = w / wnorm;
    }
    // least-squares update over the j completed columns
    if (j > 0) {
      VectorXcd y(j);
      for (int i = j - 1; i >= 0; --i) {
        cdouble acc = g[i];
        for (int l = i + 1; l < j; ++l) acc -= h(i, l) * y[l];
        y[i] = acc / h(i, i);
      }
      x += v.leftCols(j) * y;
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  const bool est_converged = rel <= options.tol;
  // the Givens value is an estimate; report the measured residual
  const double true_rel = (b - apply(x)).norm() / bnorm;
  report.achieved_tol = true_rel;
  report.status = (est_converged || true_rel <= options.tol)
                      ? SolveStatus::Converged
                  : breakdown ? SolveStatus::Breakdown
                              : SolveStatus::MaxIterations;
  report.seconds_per_iteration =
      report.iterations > 0
          ? std::chrono::duration<double>(t1 - t0).count() / report.iterations
          : 0.0;
  return {pk.unpack(x), report};
}

}  // namespace lsharm
