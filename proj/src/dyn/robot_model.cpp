#include "dcmwalk/dyn/robot_model.hpp"

#include <stdexcept>

namespace dcmwalk::dyn {

double RobotModel::total_mass() const {
  double m = 0.0;
  for (const auto& l : link) m += l.mass;
  return m;
}

void RobotModel::validate() const {
  for (int i = 0; i < kNumLinks; ++i) {
    if (!(link[i].mass > 0.0))
      throw std::invalid_argument("robot model: link mass must be positive");
    if (!(link[i].inertia > 0.0))
      throw std::invalid_argument("robot model: link inertia must be positive");
  }
  for (int j = 0; j < kNumJoints; ++j) {
    if (link[j].mass != link[j].mass)  // NaN guard, kept cheap
      throw std::invalid_argument("robot model: NaN parameter");
    if (joint[j].damping < 0.0 || joint[j].dry_friction < 0.0)
      throw std::invalid_argument("robot model: friction terms must be >= 0");
    if (!(joint[j].torque_limit > 0.0))
      throw std::invalid_argument("robot model: torque limit must be positive");
  }
  if (!(thigh_length > 0.0) || !(shank_length > 0.0))
    throw std::invalid_argument("robot model: leg segment lengths must be positive");
  if (!(heel_x < toe_x))
    throw std::invalid_argument("robot model: heel must lie behind the toe");
  if (!(sole_drop >= 0.0))
    throw std::invalid_argument("robot model: sole must not be above the ankle");
  if (!(gravity > 0.0))
    throw std::invalid_argument("robot model: gravity must be positive");
  if (!(com_height_nominal > 0.0))
    throw std::invalid_argument("robot model: nominal CoM height must be positive");
}

RobotModel RobotModel::defaults() {
  RobotModel m;
  m.link[kTorso] = {10.0, 0.30, Vec2(0.0, 0.25)};
  const LinkParams thigh = {1.5, 0.020, Vec2(0.0, -0.20)};
  const LinkParams shank = {1.0, 0.014, Vec2(0.0, -0.20)};
  // The foot is deliberately heavy-ish with generous inertia: the penalty
  // contacts put stiffness AND damping on the foot modes, and at dt = 1 ms
  // the explicit damping term needs rate * dt < 2 on the lightest body.
  const LinkParams foot = {0.7, 0.010, Vec2(0.03, -0.035)};
  m.link[kThighL] = m.link[kThighR] = thigh;
  m.link[kShankL] = m.link[kShankR] = shank;
  m.link[kFootL] = m.link[kFootR] = foot;

  const JointParams hip = {0.10, 0.20, 60.0};
  const JointParams knee = {0.10, 0.20, 60.0};
  const JointParams ankle = {0.10, 0.20, 30.0};
  m.joint[kHipL] = m.joint[kHipR] = hip;
  m.joint[kKneeL] = m.joint[kKneeR] = knee;
  m.joint[kAnkleL] = m.joint[kAnkleR] = ankle;
  return m;
}

RobotModel RobotModel::from_config(const Config& cfg) {
  RobotModel m = defaults();
  auto link_cfg = [&](const std::string& name, LinkParams& l) {
    l.mass = cfg.get_double("model." + name + "_mass", l.mass);
    l.inertia = cfg.get_double("model." + name + "_inertia", l.inertia);
    l.com.x() = cfg.get_double("model." + name + "_com_x", l.com.x());
    l.com.y() = cfg.get_double("model." + name + "_com_z", l.com.y());
  };
  link_cfg("torso", m.link[kTorso]);
  LinkParams thigh = m.link[kThighL], shank = m.link[kShankL],
             foot = m.link[kFootL];
  link_cfg("thigh", thigh);
  link_cfg("shank", shank);
  link_cfg("foot", foot);
  m.link[kThighL] = m.link[kThighR] = thigh;
  m.link[kShankL] = m.link[kShankR] = shank;
  m.link[kFootL] = m.link[kFootR] = foot;

  auto joint_cfg = [&](const std::string& name, JointParams& j) {
    j.damping = cfg.get_double("model." + name + "_damping", j.damping);
    j.dry_friction =
        cfg.get_double("model." + name + "_dry_friction", j.dry_friction);
    j.torque_limit =
        cfg.get_double("model." + name + "_torque_limit", j.torque_limit);
  };
  JointParams hip = m.joint[kHipL], knee = m.joint[kKneeL],
              ankle = m.joint[kAnkleL];
  joint_cfg("hip", hip);
  joint_cfg("knee", knee);
  joint_cfg("ankle", ankle);
  m.joint[kHipL] = m.joint[kHipR] = hip;
  m.joint[kKneeL] = m.joint[kKneeR] = knee;
  m.joint[kAnkleL] = m.joint[kAnkleR] = ankle;

  m.thigh_length = cfg.get_double("model.thigh_length", m.thigh_length);
  m.shank_length = cfg.get_double("model.shank_length", m.shank_length);
  m.heel_x = cfg.get_double("model.heel_x", m.heel_x);
  m.toe_x = cfg.get_double("model.toe_x", m.toe_x);
  m.sole_drop = cfg.get_double("model.sole_drop", m.sole_drop);
  m.gravity = cfg.get_double("model.gravity", m.gravity);
  m.com_height_nominal =
      cfg.get_double("model.com_height", m.com_height_nominal);
  m.validate();
  return m;
}

int RobotModel::parent(int link) {
  switch (link) {
    case kTorso: return -1;
    case kThighL: return kTorso;
    case kShankL: return kThighL;
    case kFootL: return kShankL;
    case kThighR: return kTorso;
    case kShankR: return kThighR;
    case kFootR: return kShankR;
    default: throw std::invalid_argument("bad link id");
  }
}

int RobotModel::driving_joint(int link) {
  switch (link) {
    case kTorso: return -1;
    case kThighL: return kHipL;
    case kShankL: return kKneeL;
    case kFootL: return kAnkleL;
    case kThighR: return kHipR;
    case kShankR: return kKneeR;
    case kFootR: return kAnkleR;
    default: throw std::invalid_argument("bad link id");
  }
}

Vec2 RobotModel::joint_offset_in_parent(int link) const {
  switch (link) {
    case kThighL:
    case kThighR: return Vec2::Zero();  // hips at the base point
    case kShankL:
    case kShankR: return Vec2(0.0, -thigh_length);
    case kFootL:
    case kFootR: return Vec2(0.0, -shank_length);
    default: throw std::invalid_argument("link has no parent joint");
  }
}

Vector6d RobotModel::torque_limits() const {
  Vector6d lim;
  for (int j = 0; j < kNumJoints; ++j) lim(j) = joint[j].torque_limit;
  return lim;
}

ContactParams ContactParams::from_config(const Config& cfg) {
  ContactParams p;
  p.normal_stiffness = cfg.get_double("contact.normal_stiffness", p.normal_stiffness);
  p.normal_damping = cfg.get_double("contact.normal_damping", p.normal_damping);
  p.tangent_gain = cfg.get_double("contact.tangent_gain", p.tangent_gain);
  return p;
}

}  // namespace dcmwalk::dyn
