#include "lsharm/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "lsharm/errors.hpp"
#include "lsharm/parallel.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

namespace {

// The Y integrand carries a rho^{-(n-1)} boundary layer; when a segment
// spans a wide radius ratio (first interval only) the base order is not
// enough for 1e-12 accuracy and extra points are needed.
int y_extra_order(int n, double a, double b) {
  if (a <= 0.0 || b / a <= 1.2) return 0;
  return static_cast<int>(std::ceil((n + 1) * std::log(b / a)));
}

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

double MomentTable::segment_left(const RadialGrid& g, int j, int s) const {
  return s == 0 ? g.interval_left(j) : g.node(j, s - 1);
}

double MomentTable::segment_right(const RadialGrid& g, int j, int s) const {
  return s == Nd ? g.interval_right(j) : g.node(j, s);
}

MomentTable MomentTable::precompute(const RadialGrid& grid, double k, int F,
                                    int order_multiplier) {
  if (!(k > 0.0)) throw InvalidConfig("moment table requires k > 0");
  MomentTable mt;
  mt.k = k;
  mt.R = grid.R;
  mt.Ni = grid.Ni;
  mt.Nd = grid.Nd;
  mt.F = F;
  const int segs = mt.segments_per_interval();
  const std::size_t scount =
      static_cast<std::size_t>(F + 1) * grid.Ni * segs;
  mt.jmom_.assign(scount * grid.Nd, 0.0);
  mt.ymom_.assign(scount * grid.Nd, 0.0);
  mt.jlog_.assign(scount, 0.0);
  mt.ylog_.assign(scount, 0.0);

  parallel_for(0, F + 1, [&](std::int64_t nlo, std::int64_t nhi) {
    std::vector<double> tvals(grid.Nd);
    for (int n = static_cast<int>(nlo); n < static_cast<int>(nhi); ++n) {
      const int qbase = (2 * grid.Nd + n / 2 + 8) * order_multiplier;
      for (int j = 0; j < grid.Ni; ++j) {
        const double u0 = grid.interval_left(j);
        const double u1 = grid.interval_right(j);
        const double imid = 0.5 * (u1 + u0);
        const double ihalf = 0.5 * (u1 - u0);
        for (int s = 0; s < segs; ++s) {
          const double a = mt.segment_left(grid, j, s);
          const double b = mt.segment_right(grid, j, s);
          const double half = 0.5 * (b - a);
          const double mid = 0.5 * (b + a);

          // J moments, scaled by (rho / b)^{n+2}
          mt.jlog_[mt.sidx(n, j, s)] = (n + 2.0) * std::log(b);
          {
            const auto& rule = specfun::gauss_legendre(qbase);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
              const double rho = mid + half * rule.nodes[q];
              const double w = half * rule.weights[q];
              const double powf = std::exp((n + 2.0) * std::log(rho / b));
              const double base =
                  w * powf * specfun::modified_bessel_j(n, k * rho);
              const double sc = (rho - imid) / ihalf;
              specfun::chebyshev_values(grid.Nd - 1,
                                        std::clamp(sc, -1.0, 1.0), tvals);
              for (int l = 0; l < grid.Nd; ++l) {
                mt.jmom_[mt.vidx(n, j, s, l)] += base * tvals[l];
              }
            }
          }

          // Y moments, scaled by (base / rho)^{n-1}; the segment touching
          // rho = 0 is never consumed by a suffix integral and is skipped.
          if (j == 0 && s == 0) continue;
          const double ybase = (n >= 1) ? a : b;
          mt.ylog_[mt.sidx(n, j, s)] = (1.0 - n) * std::log(ybase);
          {
            const auto& rule = specfun::gauss_legendre(
                qbase + y_extra_order(n, a, b) * order_multiplier);
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
              const double rho = mid + half * rule.nodes[q];
              const double w = half * rule.weights[q];
              const double powf = std::exp((1.0 - n) * std::log(rho / ybase));
              const double base =
                  w * powf * specfun::modified_bessel_y(n, k * rho);
              const double sc = (rho - imid) / ihalf;
              specfun::chebyshev_values(grid.Nd - 1,
                                        std::clamp(sc, -1.0, 1.0), tvals);
              for (int l = 0; l < grid.Nd; ++l) {
                mt.ymom_[mt.vidx(n, j, s, l)] += base * tvals[l];
              }
            }
          }
        }
      }
    }
  });
  return mt;
}

bool MomentTable::matches(const RadialGrid& grid, double k_, int F_) const {
  return k == k_ && R == grid.R && Ni == grid.Ni && Nd == grid.Nd && F == F_;
}

namespace {
constexpr char kMagic[4] = {'L', 'S', 'M', 'C'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

bool MomentTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  auto put = [&](const void* p, std::size_t len) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(len));
  };
  put(kMagic, 4);
  put(&kVersion, 4);
  put(&k, 8);
  put(&R, 8);
  const std::uint32_t ni = Ni, nd = Nd, f = F;
  put(&ni, 4);
  put(&nd, 4);
  put(&f, 4);
  const std::uint64_t vcount = jmom_.size(), scount = jlog_.size();
  put(&vcount, 8);
  put(&scount, 8);
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(jmom_.data(), jmom_.size() * 8, h);
  h = fnv1a(ymom_.data(), ymom_.size() * 8, h);
  h = fnv1a(jlog_.data(), jlog_.size() * 8, h);
  h = fnv1a(ylog_.data(), ylog_.size() * 8, h);
  put(&h, 8);
  put(jmom_.data(), jmom_.size() * 8);
  put(ymom_.data(), ymom_.size() * 8);
  put(jlog_.data(), jlog_.size() * 8);
  put(ylog_.data(), ylog_.size() * 8);
  return static_cast<bool>(out);
}

std::optional<MomentTable> MomentTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  auto get = [&](void* p, std::size_t len) -> bool {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(len));
    return static_cast<bool>(in);
  };
  char magic[4];
  std::uint32_t version = 0;
  if (!get(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
  if (!get(&version, 4) || version != kVersion) return std::nullopt;
  MomentTable mt;
  std::uint32_t ni = 0, nd = 0, f = 0;
  std::uint64_t vcount = 0, scount = 0, h = 0;
  if (!get(&mt.k, 8) || !get(&mt.R, 8) || !get(&ni, 4) || !get(&nd, 4) ||
      !get(&f, 4) || !get(&vcount, 8) || !get(&scount, 8) || !get(&h, 8)) {
    return std::nullopt;
  }
  mt.Ni = static_cast<int>(ni);
  mt.Nd = static_cast<int>(nd);
  mt.F = static_cast<int>(f);
  const std::uint64_t expect_s =
      static_cast<std::uint64_t>(mt.F + 1) * mt.Ni * (mt.Nd + 1);
  if (scount != expect_s || vcount != expect_s * mt.Nd) return std::nullopt;
  mt.jmom_.resize(vcount);
  mt.ymom_.resize(vcount);
  mt.jlog_.resize(scount);
  mt.ylog_.resize(scount);
  if (!get(mt.jmom_.data(), vcount * 8) || !get(mt.ymom_.data(), vcount * 8) ||
      !get(mt.jlog_.data(), scount * 8) || !get(mt.ylog_.data(), scount * 8)) {
    return std::nullopt;
  }
  std::uint64_t check = 1469598103934665603ULL;
  check = fnv1a(mt.jmom_.data(), mt.jmom_.size() * 8, check);
  check = fnv1a(mt.ymom_.data(), mt.ymom_.size() * 8, check);
  check = fnv1a(mt.jlog_.data(), mt.jlog_.size() * 8, check);
  check = fnv1a(mt.ylog_.data(), mt.ylog_.size() * 8, check);
  if (check != h) return std::nullopt;
  return mt;
}

std::string MomentTable::cache_name(const std::string& stem) const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "_k%.10g_R%.10g_Ni%d_Nd%d_F%d.lsmc", k, R, Ni,
                Nd, F);
  return stem + buf;
}

}  // namespace lsharm
