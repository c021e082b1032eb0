#ifndef LSHARM_CONFIG_HPP
#define LSHARM_CONFIG_HPP

#include <string>
#include <vector>

#include "lsharm/scenarios.hpp"

namespace lsharm {

enum class ScenarioKind { Free, Sphere, ShiftedSphere, Square, Hoelder };
enum class ReferenceKind { None, Exact, Self };
enum class SweepKind { None, Intervals, Band };

/// One run = one parameter block: scenario, discretization, solver knobs
/// and outputs. Parsed from a flat `key = value` text file (# comments);
/// unknown keys are rejected and parsing round-trips through serialize().
struct RunConfig {
  int version = 1;
  ScenarioKind scenario = ScenarioKind::Sphere;

  double wavenumber = 1.0;  // k
  int band = 15;            // F
  double radius_R = 2.0;    // outer radius of the computational ball
  int intervals = 8;        // Ni
  int interp_order = 2;     // Nd

  int m_inc = 0;
  double refractive_index = 2.0;  // n0
  double scatterer_radius = 1.0;  // r
  double offset = 0.0;            // d
  double beta = 0.4;
  int m_ref = 1;

  double gmres_tol = 1e-10;
  int gmres_max_iter = 500;
  int gmres_restart = 50;

  ReferenceKind reference = ReferenceKind::Exact;
  SweepKind sweep = SweepKind::None;
  std::vector<int> sweep_values;

  std::string output_dir = "out";
  std::string moment_cache;  // cache file stem; empty disables caching
  int threads = 0;           // 0 = automatic

  static RunConfig parse(const std::string& text);
  static RunConfig parse_file(const std::string& path);
  std::string serialize() const;

  /// Scenario pieces assembled from the fields above.
  ContrastSpec contrast_spec() const;
  IncidentSpec incident_spec() const;
  /// Reference kind actually used (Exact is not available for square /
  /// hoelder scenarios and falls back to Self).
  ReferenceKind effective_reference() const;
};

}  // namespace lsharm

#endif
