#include "lsharm/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "lsharm/errors.hpp"
#include "lsharm/ls_operator.hpp"
#include "lsharm/oracle.hpp"
#include "lsharm/parallel.hpp"
#include "lsharm/scenarios.hpp"
#include "lsharm/sht.hpp"
#include "lsharm/specfun.hpp"

namespace lsharm {

namespace {

namespace fs = std::filesystem;

MomentTable obtain_moments(const RunConfig& cfg, const RadialGrid& grid,
                           double* seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!cfg.moment_cache.empty()) {
    MomentTable probe;
    probe.k = cfg.wavenumber;
    probe.R = grid.R;
    probe.Ni = grid.Ni;
    probe.Nd = grid.Nd;
    probe.F = cfg.band;
    const std::string path = probe.cache_name(cfg.moment_cache);
    if (auto loaded = MomentTable::load(path);
        loaded && loaded->matches(grid, cfg.wavenumber, cfg.band)) {
      if (seconds) {
        *seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
      }
      return std::move(*loaded);
    }
    MomentTable mt = MomentTable::precompute(grid, cfg.wavenumber, cfg.band);
    mt.save(path);
    if (seconds) {
      *seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
    return mt;
  }
  MomentTable mt = MomentTable::precompute(grid, cfg.wavenumber, cfg.band);
  if (seconds) {
    *seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  return mt;
}

ModeField exact_reference(const RunConfig& cfg, const RadialGrid& grid,
                          int band) {
  switch (cfg.scenario) {
    case ScenarioKind::Free: {
      IncidentSpec inc = cfg.incident_spec();
      return incident_coefficients(inc, grid, band);
    }
    case ScenarioKind::Sphere:
      return exact_solution_sphere(cfg.wavenumber, cfg.m_inc,
                                   cfg.refractive_index, band, grid,
                                   cfg.scatterer_radius);
    case ScenarioKind::ShiftedSphere:
      return exact_solution_shifted(cfg.wavenumber, cfg.m_inc, cfg.offset, band,
                                    grid, cfg.refractive_index,
                                    cfg.scatterer_radius);
    default:
      throw InvalidConfig("no exact reference for this scenario");
  }
}

}  // namespace

RunOutcome execute(const RunConfig& cfg, const MomentTable* moment_override) {
  if (cfg.threads > 0) set_worker_threads(cfg.threads);
  RunOutcome out;
  out.config = cfg;
  out.grid = RadialGrid::build(cfg.radius_R, cfg.intervals, cfg.interp_order);

  ProblemSpec spec;
  spec.k = cfg.wavenumber;
  spec.band = cfg.band;
  spec.grid = out.grid;
  spec.contrast = contrast_coefficients(cfg.contrast_spec(), out.grid,
                                        2 * cfg.band);
  IncidentDiagnostics diag;
  spec.incident =
      incident_coefficients(cfg.incident_spec(), out.grid, cfg.band, &diag);
  out.incident_tail = diag.tail_coefficient;

  std::optional<MomentTable> owned;
  const MomentTable* mt = moment_override;
  if (mt == nullptr || !mt->matches(out.grid, cfg.wavenumber, cfg.band)) {
    owned = obtain_moments(cfg, out.grid, &out.moment_seconds);
    mt = &*owned;
  }

  ForwardOperator op(spec, *mt);
  SolveOptions opts;
  opts.tol = cfg.gmres_tol;
  opts.max_iter = cfg.gmres_max_iter;
  opts.restart = cfg.gmres_restart;
  auto [u, report] = solve(op, spec.incident, opts);
  out.solution = std::move(u);
  out.report = std::move(report);

  if (cfg.effective_reference() == ReferenceKind::Exact) {
    const ModeField ref = exact_reference(cfg, out.grid, cfg.band);
    out.relative_error = field_error(out.solution, ref);
  }
  return out;
}

ModeField resample_radial(const ModeField& f, const RadialGrid& from,
                          const RadialGrid& to) {
  if (std::abs(from.R - to.R) > 1e-12 * from.R) {
    throw InvalidConfig("resample_radial: grids span different balls");
  }
  ModeField out(f.band(), to.total_nodes());
  const auto cols = f.nonzero_columns();
  std::vector<cdouble> profile(from.total_nodes());
  std::vector<cdouble> coeffs(from.total_nodes());
  std::vector<double> tl(from.Nd);
  for (int m : cols) {
    for (int n = std::abs(m); n <= f.band(); ++n) {
      for (int node = 0; node < from.total_nodes(); ++node) {
        profile[node] = f.at(node, n, m);
      }
      coeffs = from.chebyshev_fit_all(profile);
      for (int node = 0; node < to.total_nodes(); ++node) {
        const double rho = to.nodes[node];
        int j = std::min(from.Ni - 1,
                         static_cast<int>(rho / (from.R / from.Ni)));
        const double u0 = from.interval_left(j);
        const double u1 = from.interval_right(j);
        const double s =
            std::clamp((rho - 0.5 * (u1 + u0)) / (0.5 * (u1 - u0)), -1.0, 1.0);
        specfun::chebyshev_values(from.Nd - 1, s, tl);
        cdouble acc = 0.0;
        for (int l = 0; l < from.Nd; ++l) {
          acc += coeffs[static_cast<std::size_t>(j) * from.Nd + l] * tl[l];
        }
        out.at(node, n, m) = acc;
      }
    }
  }
  return out;
}

std::vector<SweepRow> sweep_rows(const RunConfig& cfg, std::ostream& log) {
  if (cfg.sweep == SweepKind::None || cfg.sweep_values.size() < 2) {
    throw InvalidConfig("sweep requires a sweep kind and at least two values");
  }
  const ReferenceKind ref_kind = cfg.effective_reference();

  // a self reference refines the swept direction past the finest row
  std::optional<RunOutcome> self_ref;
  if (ref_kind == ReferenceKind::Self) {
    RunConfig rc = cfg;
    rc.sweep = SweepKind::None;
    rc.reference = ReferenceKind::None;
    const int finest =
        *std::max_element(cfg.sweep_values.begin(), cfg.sweep_values.end());
    if (cfg.sweep == SweepKind::Intervals) {
      rc.intervals = 2 * finest;
    } else {
      rc.band = 2 * (finest + 1) - 1;
    }
    log << "# self reference: " << (cfg.sweep == SweepKind::Intervals
                                        ? "intervals = "
                                        : "band = ")
        << (cfg.sweep == SweepKind::Intervals ? rc.intervals : rc.band) << "\n";
    self_ref = execute(rc);
  }

  // exact angular references are truncated above the finest row band
  std::optional<ModeField> exact_band_ref;
  int exact_band = cfg.band;
  if (ref_kind == ReferenceKind::Exact && cfg.sweep == SweepKind::Band) {
    const int finest =
        *std::max_element(cfg.sweep_values.begin(), cfg.sweep_values.end());
    exact_band = 2 * (finest + 1) - 1;
  }

  std::vector<SweepRow> rows;
  double prev_error = 0.0;
  for (std::size_t idx = 0; idx < cfg.sweep_values.size(); ++idx) {
    RunConfig rc = cfg;
    rc.sweep = SweepKind::None;
    rc.reference = ReferenceKind::None;
    if (cfg.sweep == SweepKind::Intervals) {
      rc.intervals = cfg.sweep_values[idx];
    } else {
      rc.band = cfg.sweep_values[idx];
    }
    RunOutcome run = execute(rc);

    double err = -1.0;
    if (ref_kind == ReferenceKind::Exact) {
      if (cfg.sweep == SweepKind::Band) {
        if (!exact_band_ref) {
          exact_band_ref = exact_reference(cfg, run.grid, exact_band);
        }
        err = field_error(run.solution.padded_to(exact_band), *exact_band_ref);
      } else {
        const ModeField ref = exact_reference(rc, run.grid, rc.band);
        err = field_error(run.solution, ref);
      }
    } else if (ref_kind == ReferenceKind::Self) {
      if (cfg.sweep == SweepKind::Intervals) {
        const ModeField ref = resample_radial(self_ref->solution,
                                              self_ref->grid, run.grid);
        err = field_error(run.solution, ref);
      } else {
        err = field_error(run.solution.padded_to(self_ref->config.band),
                          self_ref->solution);
      }
    }

    SweepRow row;
    row.value = cfg.sweep_values[idx];
    row.time_per_iteration = run.report.seconds_per_iteration;
    row.iterations = run.report.iterations;
    row.relative_error = err;
    if (idx > 0 && err > 0.0 && prev_error > 0.0) {
      row.error_ratio = prev_error / err;
      row.log2_error_ratio = std::log2(row.error_ratio);
    }
    prev_error = err;
    rows.push_back(row);
    log << "# value " << row.value << ": iterations " << row.iterations
        << ", error " << err << "\n";
  }
  return rows;
}

namespace {

void write_report(const fs::path& dir, const RunOutcome& out) {
  std::ofstream rep(dir / "run_report.txt");
  rep.precision(12);
  rep << "scenario_config:\n" << out.config.serialize() << "\n";
  rep << "iterations = " << out.report.iterations << "\n";
  rep << "achieved_residual = " << out.report.achieved_tol << "\n";
  rep << "status = "
      << (out.report.status == SolveStatus::Converged       ? "converged"
          : out.report.status == SolveStatus::MaxIterations ? "max-iterations"
                                                            : "breakdown")
      << "\n";
  rep << "seconds_per_iteration = " << out.report.seconds_per_iteration << "\n";
  rep << "moment_seconds = " << out.moment_seconds << "\n";
  rep << "incident_tail_coefficient = " << out.incident_tail << "\n";
  if (out.relative_error >= 0.0) {
    rep << "relative_error = " << out.relative_error << "\n";
  }
  rep << "residual_history =";
  for (double r : out.report.residual_history) rep << " " << r;
  rep << "\n";
}

void write_coefficients(const fs::path& dir, const RunOutcome& out) {
  std::ofstream csv(dir / "solution_coefficients.csv");
  csv.precision(16);
  csv << "node,rho,n,m,re,im\n";
  const auto cols = out.solution.nonzero_columns();
  for (int node = 0; node < out.solution.radial_nodes(); ++node) {
    for (int m : cols) {
      for (int n = std::abs(m); n <= out.solution.band(); ++n) {
        const cdouble c = out.solution.at(node, n, m);
        csv << node << ',' << out.grid.nodes[node] << ',' << n << ',' << m
            << ',' << c.real() << ',' << c.imag() << "\n";
      }
    }
  }
}

void write_field_slice(const fs::path& dir, const RunOutcome& out) {
  // |u|^2 on the meridian half-plane phi = 0
  Sht sht(AngularGrid::make(std::max(1, out.solution.band())));
  const auto cols = out.solution.nonzero_columns();
  std::vector<cdouble> values(
      static_cast<std::size_t>(out.solution.radial_nodes()) *
      sht.grid().points());
  sht.synthesize(out.solution, cols, values);
  std::ofstream csv(dir / "field_slice.csv");
  csv.precision(12);
  csv << "rho,theta,intensity\n";
  const int tc = sht.grid().theta_count();
  const int pc = sht.grid().phi_count();
  for (int node = 0; node < out.solution.radial_nodes(); ++node) {
    for (int i = 0; i < tc; ++i) {
      const cdouble v =
          values[(static_cast<std::size_t>(node) * tc + i) * pc + 0];
      csv << out.grid.nodes[node] << ',' << sht.grid().theta[i] << ','
          << std::norm(v) << "\n";
    }
  }
}

}  // namespace

int run_single(const RunConfig& cfg, std::ostream& log) {
  const RunOutcome out = execute(cfg);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  write_report(dir, out);
  write_coefficients(dir, out);
  write_field_slice(dir, out);
  log << "iterations: " << out.report.iterations << "\n";
  log << "achieved residual: " << out.report.achieved_tol << "\n";
  if (out.relative_error >= 0.0) {
    log << "relative error: " << out.relative_error << "\n";
  }
  log << "outputs in " << dir.string() << "\n";
  return out.report.status == SolveStatus::Converged ? 0 : 1;
}

int run_sweep(const RunConfig& cfg, std::ostream& log) {
  const auto rows = sweep_rows(cfg, log);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "sweep_table.csv");
  csv.precision(12);
  csv << "value,time_per_iteration,gmres_iterations,relative_error,"
         "error_ratio,log2_error_ratio\n";
  for (const auto& r : rows) {
    csv << r.value << ',' << r.time_per_iteration << ',' << r.iterations << ','
        << r.relative_error << ',';
    if (r.error_ratio > 0.0) {
      csv << r.error_ratio << ',' << r.log2_error_ratio;
    } else {
      csv << ',';
    }
    csv << "\n";
  }
  log << "sweep table in " << (dir / "sweep_table.csv").string() << "\n";
  return 0;
}

int cache_moments(const RunConfig& cfg, std::ostream& log) {
  if (cfg.moment_cache.empty()) {
    throw InvalidConfig("cache-moments requires a moment_cache stem");
  }
  const RadialGrid grid =
      RadialGrid::build(cfg.radius_R, cfg.intervals, cfg.interp_order);
  MomentTable mt = MomentTable::precompute(grid, cfg.wavenumber, cfg.band);
  const std::string path = mt.cache_name(cfg.moment_cache);
  if (!mt.save(path)) throw Error("cannot write cache file " + path);
  log << "cached moments: " << path << "\n";
  return 0;
}

int selftest(std::ostream& log) {
  int failures = 0;
  auto check = [&](const char* name, bool ok, double value) {
    log << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << value << ")\n";
    if (!ok) ++failures;
  };

  {
    const auto [direct, series] = oracle::addition_theorem_check(
        {0.0, 0.0, 2.0}, {0.0, 0.0, 0.5}, 1.0, 30);
    const double err = std::abs(direct - series) / std::abs(direct);
    check("addition theorem (series vs closed form)", err < 1e-12, err);
  }
  {
    // transform roundtrip on random band-8 coefficients
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ModeField f(8, 3);
    for (auto& c : f.data()) c = {dist(rng), dist(rng)};
    Sht sht(AngularGrid::make(8));
    const auto values = sht.synthesize(f);
    const ModeField back = sht.analyze(values, f.radial_nodes(), f.band());
    double worst = 0.0;
    for (std::size_t q = 0; q < f.data().size(); ++q) {
      worst = std::max(worst, std::abs(f.data()[q] - back.data()[q]));
    }
    check("spherical transform roundtrip", worst < 1e-12, worst);
  }
  {
    // free-space solve returns the incident field in one iteration
    RunConfig cfg;
    cfg.scenario = ScenarioKind::Free;
    cfg.wavenumber = 2.0;
    cfg.band = 7;
    cfg.radius_R = 2.0;
    cfg.intervals = 2;
    cfg.interp_order = 4;
    cfg.m_inc = 1;
    cfg.reference = ReferenceKind::Exact;
    const RunOutcome out = execute(cfg);
    check("free-space identity", out.relative_error < 1e-12 &&
                                     out.report.iterations <= 1,
          out.relative_error);
  }
  {
    // homogeneous-sphere interface matching residual
    MieCoefficients mie;
    const RadialGrid grid = RadialGrid::build(2.0, 2, 4);
    exact_solution_sphere(5.0, 1, 2.0, 31, grid, 1.0, &mie);
    double worst = 0.0;
    for (int n = 1; n <= 31; ++n) {
      std::vector<double> ji(n + 2), je(n + 2), ye(n + 2);
      specfun::spherical_bessel_j_array(n + 1, 2.0 * 5.0, ji);
      specfun::spherical_bessel_j_array(n + 1, 5.0, je);
      specfun::spherical_bessel_y_array(n + 1, 5.0, ye);
      const cdouble interior = mie.interior[n] * ji[n];
      const cdouble exterior =
          mie.q[n] * je[n] + mie.scattered[n] * cdouble{je[n], ye[n]};
      const double scale =
          std::max({std::abs(interior), std::abs(exterior), 1e-30});
      worst = std::max(worst, std::abs(interior - exterior) / scale);
    }
    check("sphere interface matching", worst < 1e-10, worst);
  }
  log << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace lsharm
