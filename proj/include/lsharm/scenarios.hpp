#ifndef LSHARM_SCENARIOS_HPP
#define LSHARM_SCENARIOS_HPP

#include <vector>

#include "lsharm/mode_field.hpp"
#include "lsharm/radial_grid.hpp"

namespace lsharm {

/// Incident waves derived from a plane wave travelling in +z: the plane
/// wave differentiated m_inc times in cos(theta), optionally re-centered at
/// (0, 0, offset). The synthesized field is
///   (x^2+y^2)^{|m_inc|/2} e^{ik(z-offset)} e^{i m_inc phi}.
struct IncidentSpec {
  int m_inc = 0;
  double k = 1.0;
  double offset = 0.0;
};

struct IncidentDiagnostics {
  double tail_coefficient = 0.0;  // max |c_band^{m_inc}| over the nodes
};

/// Series coefficients on the radial grid, truncated at `band`.
/// Throws BandTooSmall if band < |m_inc|.
ModeField incident_coefficients(const IncidentSpec& spec, const RadialGrid& grid,
                                int band, IncidentDiagnostics* diag = nullptr);

enum class ContrastKind { CenteredSphere, ShiftedSphere, RotatedSquare, Hoelder };

struct ContrastSpec {
  ContrastKind kind = ContrastKind::CenteredSphere;
  double n0 = 2.0;      // refractive index inside (sphere/square kinds)
  double radius = 1.0;  // sphere radius / square half-diagonal
  double offset = 0.0;  // sphere center z-offset
  double beta = 0.4;    // Hoelder exponent
  int m_ref = 1;        // Hoelder azimuthal order
};

/// Contrast coefficients m_n^m(rho) at band `band` (callers pass 2F):
/// exact formulas for the sphere kinds and the Hoelder medium, oversampled
/// colatitude quadrature of the indicator for the rotated square.
ModeField contrast_coefficients(const ContrastSpec& spec, const RadialGrid& grid,
                                int band);

/// Interface-matching coefficients of the homogeneous-sphere solution,
/// exposed for residual checks.
struct MieCoefficients {
  double k = 0.0, n0 = 0.0, radius = 0.0;
  int m_inc = 0;
  std::vector<cdouble> interior;   // a_n
  std::vector<cdouble> scattered;  // b_n
  std::vector<cdouble> q;          // incident constants (j_n factor excluded)
};

/// Exact total field for the sphere of the given radius and index centered
/// at the origin: interior branch a_n j_n(n0 k rho), exterior branch
/// q_n j_n(k rho) + b_n h_n(k rho), matched in value and radial derivative.
ModeField exact_solution_sphere(double k, int m_inc, double n0, int band,
                                const RadialGrid& grid, double radius = 1.0,
                                MieCoefficients* mie = nullptr);

/// Exact total field for the sphere centered at (0,0,d): the centered
/// solution evaluated at shifted points and re-expanded per radial node.
ModeField exact_solution_shifted(double k, int m_inc, double d, int band,
                                 const RadialGrid& grid, double n0 = 2.0,
                                 double radius = 1.0);

}  // namespace lsharm

#endif
