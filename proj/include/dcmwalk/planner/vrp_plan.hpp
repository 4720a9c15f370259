#pragma once

#include <vector>

#include "dcmwalk/planner/gait.hpp"

namespace dcmwalk::planner {

// Sequence of VRP waypoints; consecutive pairs define phases with a duration,
// a support type and the primary support foot (in double support this is the
// foot the VRP shifts toward; the terminal shift to the stance midpoint keeps
// the previous stance id).
struct VrpPlan {
  std::vector<Vec2> waypoints;
  std::vector<double> durations;
  std::vector<SupportType> types;
  std::vector<dyn::FootSide> stance;

  int n_phases() const { return static_cast<int>(durations.size()); }
  double horizon() const;
  void validate() const;
};

// Builds the alternating single/double support waypoint sequence for a
// stepping plan. Single-support waypoints sit a CoM height above the stance
// sole center; double-support phases interpolate between consecutive stance
// waypoints; the final waypoint sits above the midpoint of the terminal
// stance pair so the plan ends capturable.
VrpPlan vrp_waypoints(const FootstepPlan& plan, const GaitParams& gait);

}  // namespace dcmwalk::planner
