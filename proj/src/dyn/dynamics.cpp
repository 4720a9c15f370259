#include "dcmwalk/dyn/dynamics.hpp"

#include <cmath>

namespace dcmwalk::dyn {
namespace {

// Subtree links moved by each dof. Base dofs move everything.
const int kSubtreeAll[] = {kTorso, kThighL, kShankL, kFootL,
                           kThighR, kShankR, kFootR};
const int kSubtreeHipL[] = {kThighL, kShankL, kFootL};
const int kSubtreeKneeL[] = {kShankL, kFootL};
const int kSubtreeAnkleL[] = {kFootL};
const int kSubtreeHipR[] = {kThighR, kShankR, kFootR};
const int kSubtreeKneeR[] = {kShankR, kFootR};
const int kSubtreeAnkleR[] = {kFootR};

struct DofInfo {
  bool prismatic;
  Vec2 axis;        // prismatic only
  int anchor_link;  // revolute only: joint sits at this link's origin
  const int* subtree;
  int subtree_size;
};

DofInfo dof_info(int dof) {
  switch (dof) {
    case 0: return {true, Vec2(1, 0), -1, kSubtreeAll, 7};
    case 1: return {true, Vec2(0, 1), -1, kSubtreeAll, 7};
    case 2: return {false, Vec2::Zero(), kTorso, kSubtreeAll, 7};
    case 3: return {false, Vec2::Zero(), kThighL, kSubtreeHipL, 3};
    case 4: return {false, Vec2::Zero(), kShankL, kSubtreeKneeL, 2};
    case 5: return {false, Vec2::Zero(), kFootL, kSubtreeAnkleL, 1};
    case 6: return {false, Vec2::Zero(), kThighR, kSubtreeHipR, 3};
    case 7: return {false, Vec2::Zero(), kShankR, kSubtreeKneeR, 2};
    case 8: return {false, Vec2::Zero(), kFootR, kSubtreeAnkleR, 1};
    default: throw std::invalid_argument("bad dof");
  }
}

struct Composite {
  double mass = 0.0;
  Vec2 com = Vec2::Zero();
  double inertia = 0.0;  // about composite CoM
};

Composite composite_of(const RobotModel& m, const Kinematics& kin,
                       const int* links, int n) {
  Composite c;
  for (int i = 0; i < n; ++i) {
    c.mass += m.link[links[i]].mass;
    c.com += m.link[links[i]].mass * kin.link[links[i]].com;
  }
  c.com /= c.mass;
  for (int i = 0; i < n; ++i) {
    const Vec2 d = kin.link[links[i]].com - c.com;
    c.inertia += m.link[links[i]].inertia + m.link[links[i]].mass * d.squaredNorm();
  }
  return c;
}

// Whether dof `a` is an ancestor of (or equal to) dof `b` in the kinematic
// tree, i.e. moving `a` moves everything `b` moves.
bool covers(int a, int b) {
  if (a <= 2) return true;                 // base dofs move the whole robot
  if (b <= 2) return false;
  const int leg_a = (a - 3) / 3, leg_b = (b - 3) / 3;
  if (leg_a != leg_b) return false;
  return a <= b;  // within a leg: hip < knee < ankle
}

}  // namespace

Matrix9d mass_matrix(const RobotModel& m, const Vector9d& q) {
  const Kinematics kin = forward_kinematics(m, q, Vector9d::Zero());
  Matrix9d M = Matrix9d::Zero();

  for (int j = 0; j < 9; ++j) {
    const DofInfo dj = dof_info(j);
    const Composite c = composite_of(m, kin, dj.subtree, dj.subtree_size);
    // Wrench produced by a unit acceleration of dof j on its subtree
    // composite: force F and torque N about the composite CoM.
    Vec2 F;
    double N;
    if (dj.prismatic) {
      F = c.mass * dj.axis;
      N = 0.0;
    } else {
      const Vec2 a = kin.link[dj.anchor_link].origin;
      F = c.mass * perp(c.com - a);
      N = c.inertia;
    }
    for (int i = 0; i <= j; ++i) {
      if (!covers(i, j)) continue;
      const DofInfo di = dof_info(i);
      double mij;
      if (di.prismatic) {
        mij = di.axis.dot(F);
      } else {
        const Vec2 a = kin.link[di.anchor_link].origin;
        mij = N + cross2(c.com - a, F);
      }
      M(i, j) = mij;
      M(j, i) = mij;
    }
  }
  return M;
}

Vector9d inverse_dynamics(const RobotModel& m, const Vector9d& q,
                          const Vector9d& v, const Vector9d& qdd) {
  const Kinematics kin = forward_kinematics(m, q, v);
  const auto acc = acceleration_pass(m, kin, qdd);
  const Vec2 g(0.0, -m.gravity);

  Vector9d tau = Vector9d::Zero();
  for (int l = 0; l < kNumLinks; ++l) {
    const Vec2 F = m.link[l].mass * (acc[l].a_com - g);
    const double N = m.link[l].inertia * acc[l].domega;
    const auto Jv = point_jacobian(m, kin, l, kin.link[l].com);
    const auto Jw = orientation_jacobian(l);
    tau += Jv.transpose() * F + Jw.transpose() * N;
  }
  return tau;
}

Vector9d nonlinear_bias(const RobotModel& m, const Vector9d& q,
                        const Vector9d& v) {
  return inverse_dynamics(m, q, v, Vector9d::Zero());
}

Vector6d joint_friction(const RobotModel& m, const Vector9d& v) {
  constexpr double kDryEps = 1e-3;  // [rad/s] tanh regularization width
  Vector6d tau;
  for (int j = 0; j < kNumJoints; ++j) {
    const double qd = v(3 + j);
    tau(j) = -m.joint[j].damping * qd -
             m.joint[j].dry_friction * std::tanh(qd / kDryEps);
  }
  return tau;
}

std::vector<ContactWrench> contact_model(const RobotModel& m,
                                         const Kinematics& kin,
                                         const Terrain& terrain,
                                         const ContactParams& params) {
  std::vector<ContactWrench> out;
  for (int cp = 0; cp < kNumContactPoints; ++cp) {
    const Vec2 p = kin.contact_point(m, cp);
    const double penetration = terrain.height(p.x()) - p.y();
    if (penetration <= 0.0) continue;
    const Vec2 pv = kin.contact_velocity(m, cp);
    const double pen_rate = terrain.slope(p.x()) * pv.x() - pv.y();
    double fn = params.normal_stiffness * penetration +
                params.normal_damping * pen_rate;
    if (fn <= 0.0) continue;
    const double slip = pv.x();
    const double cap = terrain.friction * fn;
    const double ft_mag = std::min(params.tangent_gain * std::abs(slip), cap);
    ContactWrench w;
    w.point = cp;
    w.position = p;
    w.normal = fn;
    w.tangent = slip >= 0.0 ? -ft_mag : ft_mag;
    out.push_back(w);
  }
  return out;
}

Vector9d contact_generalized_force(const RobotModel& m, const Kinematics& kin,
                                   const std::vector<ContactWrench>& contacts) {
  Vector9d tau = Vector9d::Zero();
  for (const auto& w : contacts) {
    const auto J = point_jacobian(m, kin, contact_link(w.point), w.position);
    tau += J.transpose() * w.force();
  }
  return tau;
}

Vector9d forward_dynamics(const RobotModel& m, const Vector9d& q,
                          const Vector9d& v, const Vector6d& tau,
                          const std::vector<ContactWrench>& contacts) {
  const Kinematics kin = forward_kinematics(m, q, v);
  const Matrix9d M = mass_matrix(m, q);
  const Vector9d h = nonlinear_bias(m, q, v);

  Vector9d rhs = -h;
  rhs.tail<6>() += tau + joint_friction(m, v);
  rhs += contact_generalized_force(m, kin, contacts);
  return M.ldlt().solve(rhs);
}

double total_energy(const RobotModel& m, const Vector9d& q,
                    const Vector9d& v) {
  const Kinematics kin = forward_kinematics(m, q, v);
  double e = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    e += 0.5 * m.link[l].mass * kin.link[l].v_com.squaredNorm();
    e += 0.5 * m.link[l].inertia * kin.link[l].omega * kin.link[l].omega;
    e += m.link[l].mass * m.gravity * kin.link[l].com.y();
  }
  return e;
}

}  // namespace dcmwalk::dyn
