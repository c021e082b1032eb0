#ifndef LSHARM_ERRORS_HPP
#define LSHARM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lsharm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coefficient band exceeds what a grid or table was built for.
struct BandMismatch : Error {
  using Error::Error;
};

/// Band limit too small to hold a requested azimuthal order.
struct BandTooSmall : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct InvalidGeometry : Error {
  using Error::Error;
};

/// Log-space recombination would exceed the floating range; the
/// configuration is outside the design limits, not a numerical bug.
struct ScalingOverflow : Error {
  using Error::Error;
};

/// The 2x2 interface-matching system is numerically singular
/// (physical resonance).
struct SingularMatching : Error {
  using Error::Error;
};

/// Addition-theorem series requested for coincident radii.
struct NonSeparated : Error {
  using Error::Error;
};

}  // namespace lsharm

#endif
