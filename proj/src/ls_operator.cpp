#include "lsharm/ls_operator.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lsharm/errors.hpp"
#include "lsharm/parallel.hpp"

namespace lsharm {

ForwardOperator::ForwardOperator(const ProblemSpec& spec,
                                 const MomentTable& moments,
                                 bool restrict_columns)
    : spec_(spec), moments_(&moments), restrict_(restrict_columns) {
  if (!moments.matches(spec_.grid, spec_.k, moments.F) ||
      moments.F < spec_.band) {
    throw InvalidConfig("moment table does not match problem configuration");
  }
  if (spec_.contrast.band() < spec_.band ||
      spec_.contrast.radial_nodes() != spec_.grid.total_nodes()) {
    throw BandMismatch("contrast band/grid mismatch");
  }
  sht_ = std::make_unique<Sht>(
      AngularGrid::make(spec_.band + spec_.contrast.band()));
  contrast_cols_ = spec_.contrast.nonzero_columns();
  const int nodes = spec_.grid.total_nodes();
  kcoef_.resize(static_cast<std::size_t>(spec_.band + 1) * nodes);
  parallel_for(0, spec_.band + 1, [&](std::int64_t lo, std::int64_t hi) {
    for (int n = static_cast<int>(lo); n < static_cast<int>(hi); ++n) {
      for (int node = 0; node < nodes; ++node) {
        kcoef_[static_cast<std::size_t>(n) * nodes + node] =
            make_kernel_coefficients(n, spec_.grid.nodes[node], spec_.k);
      }
    }
  });
}

std::vector<int> ForwardOperator::closure_columns(std::vector<int> cols) const {
  if (!restrict_) return all_columns(spec_.band);
  std::set<int> s(cols.begin(), cols.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur) {
      for (int b : contrast_cols_) {
        const int c = a + b;
        if (std::abs(c) <= spec_.band && s.insert(c).second) grew = true;
      }
    }
  }
  return {s.begin(), s.end()};
}

ModeField ForwardOperator::apply_kernel(const ModeField& u) const {
  if (u.band() != spec_.band ||
      u.radial_nodes() != spec_.grid.total_nodes()) {
    throw BandMismatch("apply: field does not match operator layout");
  }
  const int F = spec_.band;
  const int nodes = spec_.grid.total_nodes();

  std::vector<int> u_cols =
      restrict_ ? u.nonzero_columns() : all_columns(F);
  std::vector<int> out_cols;
  if (restrict_) {
    std::set<int> s;
    for (int a : u_cols) {
      for (int b : contrast_cols_) {
        if (std::abs(a + b) <= F) s.insert(a + b);
      }
    }
    out_cols.assign(s.begin(), s.end());
  } else {
    out_cols = all_columns(F);
  }

  ModeField kfield(F, nodes);
  if (u_cols.empty() || out_cols.empty()) return kfield;

  // angular stage: I_n^m = coefficients of u * contrast, degrees n <= F
  ModeField ifield(F, nodes);
  sht_->product_project(u, u_cols, spec_.contrast, contrast_cols_, F, out_cols,
                        ifield);

  // radial stage: independent (n, m) modes
  struct Mode {
    int n, m;
  };
  std::vector<Mode> modes;
  for (int m : out_cols) {
    for (int n = std::abs(m); n <= F; ++n) modes.push_back({n, m});
  }
  parallel_for(0, static_cast<std::int64_t>(modes.size()),
               [&](std::int64_t lo, std::int64_t hi) {
                 std::vector<cdouble> profile(nodes);
                 for (std::int64_t q = lo; q < hi; ++q) {
                   const auto [n, m] = modes[q];
                   for (int node = 0; node < nodes; ++node) {
                     profile[node] = ifield.at(node, n, m);
                   }
                   const auto coeffs = spec_.grid.chebyshev_fit_all(profile);
                   const auto cum =
                       cumulative_integrals(spec_.grid, *moments_, n, coeffs);
                   for (int node = 0; node < nodes; ++node) {
                     kfield.at(node, n, m) = assemble_kernel(
                         cum.prefix[node], cum.suffix[node], cum.full,
                         kernel_coefficients(n, node));
                   }
                 }
               });
  return kfield;
}

ModeField ForwardOperator::apply(const ModeField& u) const {
  ModeField out = apply_kernel(u);
  const cdouble mi{0.0, -1.0};
  auto dst = out.data();
  auto src = u.data();
  for (std::size_t q = 0; q < dst.size(); ++q) dst[q] = src[q] + mi * dst[q];
  return out;
}

double field_error(const ModeField& u, const ModeField& reference) {
  if (u.band() != reference.band() ||
      u.radial_nodes() != reference.radial_nodes()) {
    throw BandMismatch("field_error: band/grid mismatch");
  }
  std::vector<int> cols;
  {
    const auto a = u.nonzero_columns();
    const auto b = reference.nonzero_columns();
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(cols));
  }
  Sht sht(AngularGrid::make(std::max(u.band(), 1)));
  const std::size_t count =
      static_cast<std::size_t>(u.radial_nodes()) * sht.grid().points();
  std::vector<cdouble> vu(count), vr(count);
  sht.synthesize(u, cols, vu);
  sht.synthesize(reference, cols, vr);
  double dmax = 0.0, rmax = 0.0;
  for (std::size_t q = 0; q < count; ++q) {
    dmax = std::max(dmax, std::abs(vu[q] - vr[q]));
    rmax = std::max(rmax, std::abs(vr[q]));
  }
  if (rmax == 0.0) return dmax == 0.0 ? 0.0 : INFINITY;
  return dmax / rmax;
}

}  // namespace lsharm
