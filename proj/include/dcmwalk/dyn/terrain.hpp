#pragma once

#include <vector>

#include "dcmwalk/core/types.hpp"

namespace dcmwalk::dyn {

// Piecewise-linear height field h(x) with a single friction coefficient.
// An empty knot list means perfectly flat ground at z = 0. Outside the knot
// range the profile continues flat at the boundary height.
struct Terrain {
  std::vector<double> knot_x;  // strictly increasing
  std::vector<double> knot_h;
  double friction = 0.9;

  static Terrain flat(double mu = 0.9) {
    Terrain t;
    t.friction = mu;
    return t;
  }

  double height(double x) const;
  double slope(double x) const;

  void validate() const;  // throws on non-increasing knots or mu <= 0
};

}  // namespace dcmwalk::dyn
