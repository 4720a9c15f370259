#pragma once

#include <vector>

#include "dcmwalk/dyn/dynamics.hpp"

namespace dcmwalk::dyn {

// A torque command waiting in the actuation pipeline.
struct PendingCommand {
  double release_time = 0.0;
  Vector6d torque = Vector6d::Zero();
};

struct SimState {
  Vector9d q = Vector9d::Zero();
  Vector9d v = Vector9d::Zero();
  double t = 0.0;

  // Actuation pipeline: the torque currently held at the motors plus commands
  // that have been issued but not yet released (transport delay).
  Vector6d active_torque = Vector6d::Zero();
  std::vector<PendingCommand> pending;

  // Motor efficiency for the current control period (multiplies the plant
  // torque; redrawn by the randomization engine every control tick).
  double efficiency = 1.0;

  // Contact flags from the last integration step (heel L, toe L, heel R,
  // toe R).
  std::array<bool, kNumContactPoints> contact = {false, false, false, false};
};

struct StepInfo {
  bool ok = true;  // false when the state diverged (NaN or blow-up)
  std::vector<ContactWrench> contacts;
  Vector6d applied_torque = Vector6d::Zero();  // plant torque used this step
};

// One semi-implicit Euler step: clamp plant torque to the model limits,
// evaluate contacts at the current state, integrate velocities then
// positions. The plant torque over [t, t+dt) is the time-weighted average of
// the actuation pipeline (piecewise-constant commands released mid-step are
// integrated exactly), scaled by the current motor efficiency.
StepInfo step(SimState& state, const RobotModel& m, const Terrain& terrain,
              const ContactParams& cp, double dt);

// Push a torque command into the pipeline, to be released at t + delay.
void command_torque(SimState& state, const Vector6d& tau, double delay);

// CoM position and velocity.
std::pair<Vec2, Vec2> com_state(const RobotModel& m, const SimState& s);

// Divergent component of motion xi = x_com + b v_com.
Vec2 dcm(const RobotModel& m, const SimState& s, double b);

// Builds a double-support standing state: feet flat on the ground at the
// given x positions, hip height chosen so the CoM sits at the model's nominal
// height (bisection on the hip height; legs symmetric via two-link IK).
SimState standing_state(const RobotModel& m, double left_x, double right_x,
                        double ground_height = 0.0);

// Two-link leg IK in the sagittal plane: given the hip->ankle vector in world
// coordinates and the torso angle, returns hip/knee angles (knee bending
// backward) plus the ankle angle that keeps the sole at the requested pitch.
// Returns false when the target is out of reach.
bool leg_ik(const RobotModel& m, const Vec2& hip_to_ankle, double torso_angle,
            double foot_pitch, double* hip, double* knee, double* ankle);

}  // namespace dcmwalk::dyn
