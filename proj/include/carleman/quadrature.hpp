#pragma once

#include <vector>

namespace carleman {

/// Gauss–Legendre nodes and weights on [0, 1].
struct UnitGaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

UnitGaussRule gauss_legendre_unit(int n);

}  // namespace carleman
