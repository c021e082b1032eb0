#include <doctest.h>

#include <cmath>

#include "lsharm/errors.hpp"
#include "lsharm/oracle.hpp"

using namespace lsharm;
using oracle::Vec3;

TEST_CASE("addition theorem: closed form vs series") {
  const auto [direct, series] =
      oracle::addition_theorem_check({0.0, 0.0, 2.0}, {0.0, 0.0, 0.5}, 1.0, 30);
  const cdouble expect =
      std::exp(cdouble{0.0, 1.5}) / (4.0 * std::acos(-1.0) * 1.5);
  CHECK(std::abs(direct - expect) < 1e-15);
  CHECK(std::abs(series - direct) < 1e-12 * std::abs(direct));

  // generic off-axis pair
  const Vec3 x{0.9, -0.4, 1.3};
  const Vec3 y{-0.2, 0.35, 0.1};
  const auto [d2, s2] = oracle::addition_theorem_check(x, y, 2.3, 45);
  CHECK(std::abs(s2 - d2) < 1e-12 * std::abs(d2));

  // swapping the arguments leaves both values unchanged
  const auto [d3, s3] = oracle::addition_theorem_check(y, x, 2.3, 45);
  CHECK(std::abs(d3 - d2) < 1e-15);
  CHECK(std::abs(s3 - s2) < 1e-13 * std::abs(s2));
}

TEST_CASE("addition theorem: static limit and geometric convergence") {
  const Vec3 x{0.0, 0.7, 1.9};
  const Vec3 y{0.3, -0.2, 0.4};
  // k -> 0: the n = 0 term dominates and the sum tends to 1/(4 pi |x-y|)
  {
    const auto [direct, series] = oracle::addition_theorem_check(x, y, 1e-5, 25);
    const double dx = x.x - y.x, dy = x.y - y.y, dz = x.z - y.z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double statics = 1.0 / (4.0 * std::acos(-1.0) * dist);
    CHECK(std::abs(series.real() - statics) < 1e-8 * statics);
    CHECK(std::abs(direct - series) < 1e-12 * statics);
  }
  // truncation error decays geometrically with ratio ~ rho_< / rho_>
  {
    const double k = 2.0;
    const auto [direct, sN] = oracle::addition_theorem_check(x, y, k, 60);
    double prev = -1.0;
    const double rho_ratio = 0.538516 / 2.02485;  // |y| / |x|
    for (int N : {8, 12, 16}) {
      const auto [d, s] = oracle::addition_theorem_check(x, y, k, N);
      const double err = std::abs(s - direct);
      if (prev > 0.0) {
        const double measured = err / prev;  // over 4 extra terms
        const double expected = std::pow(rho_ratio, 4.0);
        CHECK(measured < expected * 20.0);
        CHECK(measured > expected / 20.0);
      }
      prev = err;
    }
  }
}

TEST_CASE("addition theorem rejects coincident radii") {
  CHECK_THROWS_AS(oracle::addition_theorem_check({1.0, 0.0, 0.0},
                                                 {0.0, 1.0, 0.0}, 1.0, 10),
                  NonSeparated);
}

TEST_CASE("dense apply: trivial cases and self-consistency") {
  const double k = 1.3;
  auto fill = [](oracle::DenseField& f, auto&& fn) {
    for (std::size_t ir = 0; ir < f.rho.size(); ++ir) {
      for (std::size_t it = 0; it < f.t.size(); ++it) {
        for (int ip = 0; ip < f.phi_count; ++ip) {
          f.values[f.index(static_cast<int>(ir), static_cast<int>(it), ip)] =
              fn(f.point(static_cast<int>(ir), static_cast<int>(it), ip));
        }
      }
    }
  };
  auto ufun = [](const Vec3& p) {
    return cdouble{1.0 + 0.2 * p.z, 0.1 * p.x};
  };
  auto mfun = [](const Vec3& p) {
    const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
    return cdouble{std::exp(-3.0 * r2), 0.0};
  };

  std::vector<Vec3> targets{{0.9, 0.1, 0.4}, {-0.3, 0.8, -0.9}};
  std::vector<cdouble> u_at(targets.size());
  for (std::size_t q = 0; q < targets.size(); ++q) u_at[q] = ufun(targets[q]);

  // m == 0 leaves u unchanged; u == 0 with m == 0 target values stays 0
  {
    oracle::DenseField u = oracle::DenseField::make_grid(2.0, 12, 12, 12);
    oracle::DenseField m = u;
    fill(u, ufun);
    const auto out = oracle::ls_apply_dense(u, m, k, targets, u_at);
    for (std::size_t q = 0; q < targets.size(); ++q) CHECK(out[q] == u_at[q]);
    const std::vector<cdouble> zeros(targets.size(), cdouble{0.0, 0.0});
    oracle::DenseField uz = oracle::DenseField::make_grid(2.0, 12, 12, 12);
    fill(m, mfun);
    const auto out2 = oracle::ls_apply_dense(uz, m, k, targets, zeros);
    for (std::size_t q = 0; q < targets.size(); ++q) CHECK(out2[q] == cdouble{0.0, 0.0});
  }

  // refining the grid drives the result toward a converged reference at
  // the documented low order (interior target, singular kernel)
  {
    cdouble ref{0.0, 0.0};
    {
      oracle::DenseField u = oracle::DenseField::make_grid(2.0, 96, 96, 64);
      oracle::DenseField m = u;
      fill(u, ufun);
      fill(m, mfun);
      ref = oracle::ls_apply_dense(u, m, k, targets, u_at)[0];
    }
    std::vector<double> errs;
    for (int q : {12, 48}) {
      oracle::DenseField u = oracle::DenseField::make_grid(2.0, q, q, q);
      oracle::DenseField m = u;
      fill(u, ufun);
      fill(m, mfun);
      errs.push_back(
          std::abs(oracle::ls_apply_dense(u, m, k, targets, u_at)[0] - ref));
    }
    CHECK(errs[1] < errs[0] / 2.0);
  }
}
