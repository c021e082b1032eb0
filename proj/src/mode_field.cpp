#include "lsharm/mode_field.hpp"

#include <algorithm>
#include <cmath>

#include "lsharm/errors.hpp"

namespace lsharm {

std::vector<int> ModeField::nonzero_columns(double threshold) const {
  std::vector<int> cols;
  for (int m = -band_; m <= band_; ++m) {
    bool hit = false;
    for (int node = 0; node < nodes_ && !hit; ++node) {
      for (int n = std::abs(m); n <= band_ && !hit; ++n) {
        if (std::abs(at(node, n, m)) > threshold) hit = true;
      }
    }
    if (hit) cols.push_back(m);
  }
  return cols;
}

double ModeField::conjugation_defect() const {
  double worst = 0.0;
  for (int node = 0; node < nodes_; ++node) {
    for (int n = 0; n <= band_; ++n) {
      for (int m = 0; m <= n; ++m) {
        const cdouble a = at(node, n, m);
        const cdouble b = at(node, n, -m);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(b - sign * std::conj(a)));
      }
    }
  }
  return worst;
}

double ModeField::max_abs() const {
  double worst = 0.0;
  for (const cdouble& c : data_) worst = std::max(worst, std::abs(c));
  return worst;
}


ModeField ModeField::padded_to(int band) const {
  if (band < band_) throw BandMismatch("padded_to: target band below source band");
  ModeField out(band, nodes_);
  for (int node = 0; node < nodes_; ++node) {
    for (int n = 0; n <= band_; ++n) {
      for (int m = -n; m <= n; ++m) out.at(node, n, m) = at(node, n, m);
    }
  }
  return out;
}

}  // namespace lsharm
