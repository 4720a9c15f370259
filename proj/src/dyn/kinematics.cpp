#include "dcmwalk/dyn/kinematics.hpp"

namespace dcmwalk::dyn {
namespace {

// Ancestor revolute joint dofs of a link, with the link whose origin anchors
// the joint. Base dofs (0,1,2) affect every link and are handled separately.
struct JointAnchor {
  int dof;
  int anchor_link;
};

int ancestor_joints(int link_id, JointAnchor out[3]) {
  int n = 0;
  int l = link_id;
  while (l != kTorso) {
    const int j = RobotModel::driving_joint(l);
    out[n++] = {3 + j, l};
    l = RobotModel::parent(l);
  }
  // Walked leaf-to-root; order does not matter for Jacobian assembly.
  return n;
}

}  // namespace

Kinematics forward_kinematics(const RobotModel& m, const Vector9d& q,
                              const Vector9d& v) {
  Kinematics k;
  auto& torso = k.link[kTorso];
  torso.theta = q(2);
  torso.omega = v(2);
  torso.origin = Vec2(q(0), q(1));
  torso.v_origin = Vec2(v(0), v(1));

  for (int l = 1; l < kNumLinks; ++l) {
    const int p = RobotModel::parent(l);
    const int dof = 3 + RobotModel::driving_joint(l);
    const auto& pk = k.link[p];
    auto& lk = k.link[l];
    const Vec2 r = rot2(pk.theta) * m.joint_offset_in_parent(l);
    lk.origin = pk.origin + r;
    lk.v_origin = pk.v_origin + pk.omega * perp(r);
    lk.theta = pk.theta + q(dof);
    lk.omega = pk.omega + v(dof);
  }
  for (int l = 0; l < kNumLinks; ++l) {
    auto& lk = k.link[l];
    const Vec2 rc = rot2(lk.theta) * m.link[l].com;
    lk.com = lk.origin + rc;
    lk.v_com = lk.v_origin + lk.omega * perp(rc);
  }
  return k;
}

std::array<LinkAcc, kNumLinks> acceleration_pass(const RobotModel& m,
                                                 const Kinematics& kin,
                                                 const Vector9d& qdd) {
  std::array<LinkAcc, kNumLinks> acc;
  acc[kTorso].domega = qdd(2);
  acc[kTorso].a_origin = Vec2(qdd(0), qdd(1));

  for (int l = 1; l < kNumLinks; ++l) {
    const int p = RobotModel::parent(l);
    const int dof = 3 + RobotModel::driving_joint(l);
    const Vec2 r = kin.link[l].origin - kin.link[p].origin;
    const auto& pk = kin.link[p];
    acc[l].a_origin = acc[p].a_origin + acc[p].domega * perp(r) -
                      pk.omega * pk.omega * r;
    acc[l].domega = acc[p].domega + qdd(dof);
  }
  for (int l = 0; l < kNumLinks; ++l) {
    const Vec2 rc = kin.link[l].com - kin.link[l].origin;
    acc[l].a_com = acc[l].a_origin + acc[l].domega * perp(rc) -
                   kin.link[l].omega * kin.link[l].omega * rc;
  }
  (void)m;
  return acc;
}

Vec2 Kinematics::point_on(const RobotModel& m, int link_id,
                          const Vec2& local) const {
  (void)m;
  return link[link_id].origin + rot2(link[link_id].theta) * local;
}

Vec2 Kinematics::point_velocity(int link_id, const Vec2& world_point) const {
  const auto& lk = link[link_id];
  return lk.v_origin + lk.omega * perp(world_point - lk.origin);
}

Vec2 Kinematics::contact_point(const RobotModel& m, int cp) const {
  const int l = contact_link(cp);
  const Vec2 local = (cp == kHeelL || cp == kHeelR) ? m.heel_offset()
                                                    : m.toe_offset();
  return point_on(m, l, local);
}

Vec2 Kinematics::contact_velocity(const RobotModel& m, int cp) const {
  return point_velocity(contact_link(cp), contact_point(m, cp));
}

Eigen::Vector3d Kinematics::foot_pose(const RobotModel& m,
                                      FootSide side) const {
  const int l = side == kLeft ? kFootL : kFootR;
  const Vec2 p = point_on(m, l, m.sole_center_offset());
  return Eigen::Vector3d(p.x(), p.y(), link[l].theta);
}

Eigen::Vector3d Kinematics::foot_pose_rate(const RobotModel& m,
                                           FootSide side) const {
  const int l = side == kLeft ? kFootL : kFootR;
  const Vec2 p = point_on(m, l, m.sole_center_offset());
  const Vec2 v = point_velocity(l, p);
  return Eigen::Vector3d(v.x(), v.y(), link[l].omega);
}

Eigen::Matrix<double, 2, 9> point_jacobian(const RobotModel& m,
                                           const Kinematics& kin, int link_id,
                                           const Vec2& world_point) {
  (void)m;
  Eigen::Matrix<double, 2, 9> J = Eigen::Matrix<double, 2, 9>::Zero();
  J(0, 0) = 1.0;
  J(1, 1) = 1.0;
  const Vec2 r_base = perp(world_point - kin.link[kTorso].origin);
  J(0, 2) = r_base.x();
  J(1, 2) = r_base.y();
  JointAnchor anchors[3];
  const int n = ancestor_joints(link_id, anchors);
  for (int i = 0; i < n; ++i) {
    const Vec2 col = perp(world_point - kin.link[anchors[i].anchor_link].origin);
    J(0, anchors[i].dof) = col.x();
    J(1, anchors[i].dof) = col.y();
  }
  return J;
}

Eigen::Matrix<double, 1, 9> orientation_jacobian(int link_id) {
  Eigen::Matrix<double, 1, 9> J = Eigen::Matrix<double, 1, 9>::Zero();
  J(0, 2) = 1.0;
  JointAnchor anchors[3];
  const int n = ancestor_joints(link_id, anchors);
  for (int i = 0; i < n; ++i) J(0, anchors[i].dof) = 1.0;
  return J;
}

Eigen::Matrix<double, 3, 9> foot_jacobian(const RobotModel& m,
                                          const Kinematics& kin,
                                          FootSide side) {
  const int l = side == kLeft ? kFootL : kFootR;
  const Vec2 p = kin.point_on(m, l, m.sole_center_offset());
  Eigen::Matrix<double, 3, 9> J;
  J.topRows<2>() = point_jacobian(m, kin, l, p);
  J.bottomRows<1>() = orientation_jacobian(l);
  return J;
}

Eigen::Vector3d foot_bias_acceleration(const RobotModel& m,
                                       const Kinematics& kin, FootSide side) {
  const int l = side == kLeft ? kFootL : kFootR;
  const auto acc = acceleration_pass(m, kin, Vector9d::Zero());
  const Vec2 p = kin.point_on(m, l, m.sole_center_offset());
  const Vec2 r = p - kin.link[l].origin;
  const Vec2 a = acc[l].a_origin + acc[l].domega * perp(r) -
                 kin.link[l].omega * kin.link[l].omega * r;
  return Eigen::Vector3d(a.x(), a.y(), acc[l].domega);
}

Vec2 com_position(const RobotModel& m, const Kinematics& kin) {
  Vec2 c = Vec2::Zero();
  double mass = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    c += m.link[l].mass * kin.link[l].com;
    mass += m.link[l].mass;
  }
  return c / mass;
}

Vec2 com_velocity(const RobotModel& m, const Kinematics& kin) {
  Vec2 v = Vec2::Zero();
  double mass = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    v += m.link[l].mass * kin.link[l].v_com;
    mass += m.link[l].mass;
  }
  return v / mass;
}

Eigen::Matrix<double, 2, 9> com_jacobian(const RobotModel& m,
                                         const Kinematics& kin) {
  Eigen::Matrix<double, 2, 9> J = Eigen::Matrix<double, 2, 9>::Zero();
  double mass = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    J += m.link[l].mass * point_jacobian(m, kin, l, kin.link[l].com);
    mass += m.link[l].mass;
  }
  return J / mass;
}

Vec2 com_bias_acceleration(const RobotModel& m, const Kinematics& kin) {
  const auto acc = acceleration_pass(m, kin, Vector9d::Zero());
  Vec2 a = Vec2::Zero();
  double mass = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    a += m.link[l].mass * acc[l].a_com;
    mass += m.link[l].mass;
  }
  return a / mass;
}

}  // namespace dcmwalk::dyn
