#pragma once

#include "carleman/numeric.hpp"

#include <iosfwd>
#include <vector>

namespace carleman {

/// Weighted point set in the plane.
struct DiscreteMeasure {
  std::vector<cplx> points;
  std::vector<double> weights;

  double mass() const;
  /// ∫ z^k dμ
  cplx moment(int k) const;
  /// CSV with header `re,im,weight`.
  void write_csv(std::ostream& os) const;
};

}  // namespace carleman
