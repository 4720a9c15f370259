#include "dcmwalk/dyn/terrain.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcmwalk::dyn {

double Terrain::height(double x) const {
  if (knot_x.empty()) return 0.0;
  if (x <= knot_x.front()) return knot_h.front();
  if (x >= knot_x.back()) return knot_h.back();
  const auto it = std::upper_bound(knot_x.begin(), knot_x.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knot_x.begin());
  const double x0 = knot_x[i - 1], x1 = knot_x[i];
  const double h0 = knot_h[i - 1], h1 = knot_h[i];
  const double s = (x - x0) / (x1 - x0);
  return h0 + s * (h1 - h0);
}

double Terrain::slope(double x) const {
  if (knot_x.empty()) return 0.0;
  if (x <= knot_x.front() || x >= knot_x.back()) return 0.0;
  const auto it = std::upper_bound(knot_x.begin(), knot_x.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - knot_x.begin());
  return (knot_h[i] - knot_h[i - 1]) / (knot_x[i] - knot_x[i - 1]);
}

void Terrain::validate() const {
  if (knot_x.size() != knot_h.size())
    throw std::invalid_argument("terrain: knot arrays differ in length");
  for (std::size_t i = 1; i < knot_x.size(); ++i)
    if (!(knot_x[i] > knot_x[i - 1]))
      throw std::invalid_argument("terrain: knots must be strictly increasing");
  if (!(friction > 0.0))
    throw std::invalid_argument("terrain: friction must be positive");
}

}  // namespace dcmwalk::dyn
