#include <cmath>

#include "dcmwalk/dyn/dynamics.hpp"
#include "dcmwalk/dyn/simulator.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dcmwalk;
using namespace dcmwalk::dyn;

namespace {

RobotModel frictionless_model() {
  RobotModel m = RobotModel::defaults();
  for (auto& j : m.joint) {
    j.damping = 0.0;
    j.dry_friction = 0.0;
  }
  return m;
}

// Kinetic energy computed link by link, independent of the mass matrix.
double kinetic_energy_oracle(const RobotModel& m, const Vector9d& q,
                             const Vector9d& v) {
  const Kinematics kin = forward_kinematics(m, q, v);
  double e = 0.0;
  for (int l = 0; l < kNumLinks; ++l) {
    e += 0.5 * m.link[l].mass * kin.link[l].v_com.squaredNorm();
    e += 0.5 * m.link[l].inertia * kin.link[l].omega * kin.link[l].omega;
  }
  return e;
}

}  // namespace

TEST_CASE("mass matrix: matches per-link kinetic energy at random states") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Vector9d v = testutil::random_v(rng, 2.0);
    const Matrix9d M = mass_matrix(m, q);
    const double ke_quad = 0.5 * v.dot(M * v);
    const double ke_link = kinetic_energy_oracle(m, q, v);
    CHECK(std::abs(ke_quad - ke_link) < 1e-9 * std::max(1.0, ke_link));
  }
}

TEST_CASE("mass matrix: symmetric positive definite") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix9d M = mass_matrix(m, testutil::random_q(rng));
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix9d> es(M);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("inverse dynamics: statics equal the potential-energy gradient") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Vector9d tau =
        inverse_dynamics(m, q, Vector9d::Zero(), Vector9d::Zero());
    // Holding still costs exactly the gradient of gravitational potential.
    const double h = 1e-6;
    for (int j = 0; j < 9; ++j) {
      Vector9d qp = q, qm = q;
      qp(j) += h;
      qm(j) -= h;
      double up = 0.0, um = 0.0;
      const Kinematics kp = forward_kinematics(m, qp, Vector9d::Zero());
      const Kinematics km = forward_kinematics(m, qm, Vector9d::Zero());
      for (int l = 0; l < kNumLinks; ++l) {
        up += m.link[l].mass * m.gravity * kp.link[l].com.y();
        um += m.link[l].mass * m.gravity * km.link[l].com.y();
      }
      CHECK(std::abs(tau(j) - (up - um) / (2 * h)) < 1e-6);
    }
    CHECK(std::abs(tau(0)) < 1e-9);
    CHECK(tau(1) == doctest::Approx(m.total_mass() * m.gravity).epsilon(1e-12));
  }
  // Without gravity a static pose needs no generalized force.
  RobotModel m0 = m;
  m0.gravity = 1e-12;
  const Vector9d tau0 =
      inverse_dynamics(m0, testutil::random_q(rng), Vector9d::Zero(),
                       Vector9d::Zero());
  CHECK(tau0.norm() < 1e-10);
}

TEST_CASE("mass matrix scales linearly with link masses") {
  RobotModel m = RobotModel::defaults();
  Rng rng(77);
  const Vector9d q = testutil::random_q(rng);
  const Matrix9d M1 = mass_matrix(m, q);
  for (auto& l : m.link) {
    l.mass *= 2.0;
    l.inertia *= 2.0;
  }
  const Matrix9d M2 = mass_matrix(m, q);
  CHECK((M2 - 2.0 * M1).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("forward/inverse dynamics round trip under 1e-8") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(11);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Vector9d v = testutil::random_v(rng, 2.0);
    Vector9d qdd;
    for (int i = 0; i < 9; ++i) qdd(i) = rng.uniform(-5.0, 5.0);
    // Generalized force from the Newton-Euler path, acceleration recovered
    // through the CRBA mass matrix: two independent algorithms.
    const Vector9d tau_gen = inverse_dynamics(m, q, v, qdd);
    const Vector9d h = nonlinear_bias(m, q, v);
    const Vector9d qdd_rec = mass_matrix(m, q).ldlt().solve(tau_gen - h);
    worst = std::max(worst, (qdd_rec - qdd).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("point jacobians match central differences") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Kinematics kin = forward_kinematics(m, q, Vector9d::Zero());
    const int link = rng.uniform_int(0, kNumLinks - 1);
    const Vec2 local(rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2));
    const Vec2 p = kin.point_on(m, link, local);
    const auto J = point_jacobian(m, kin, link, p);
    const double h = 1e-7;
    for (int j = 0; j < 9; ++j) {
      Vector9d qp = q, qm = q;
      qp(j) += h;
      qm(j) -= h;
      const Kinematics kp = forward_kinematics(m, qp, Vector9d::Zero());
      const Kinematics km = forward_kinematics(m, qm, Vector9d::Zero());
      const Vec2 fd = (kp.point_on(m, link, local) - km.point_on(m, link, local)) / (2 * h);
      CHECK(std::abs(J(0, j) - fd.x()) < 1e-6);
      CHECK(std::abs(J(1, j) - fd.y()) < 1e-6);
    }
  }
}

TEST_CASE("velocity-product acceleration matches d/dt of J qdot") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Vector9d v = testutil::random_v(rng, 1.5);
    const FootSide side = trial % 2 ? kLeft : kRight;
    const Kinematics kin = forward_kinematics(m, q, v);
    const Eigen::Vector3d bias = foot_bias_acceleration(m, kin, side);
    // d/dt [J(q(t)) qdot] with qdot frozen equals the qdd = 0 acceleration.
    const double h = 1e-6;
    const Vector9d qp = q + h * v, qm = q - h * v;
    const Kinematics kp = forward_kinematics(m, qp, v);
    const Kinematics km = forward_kinematics(m, qm, v);
    const Eigen::Vector3d fd =
        (foot_jacobian(m, kp, side) * v - foot_jacobian(m, km, side) * v) / (2 * h);
    CHECK((bias - fd).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("com jacobian and bias acceleration consistent with com velocity") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector9d q = testutil::random_q(rng);
    const Vector9d v = testutil::random_v(rng, 1.5);
    const Kinematics kin = forward_kinematics(m, q, v);
    CHECK((com_jacobian(m, kin) * v - com_velocity(m, kin)).norm() < 1e-10);
    const double h = 1e-6;
    const Kinematics kp = forward_kinematics(m, q + h * v, v);
    const Kinematics km = forward_kinematics(m, q - h * v, v);
    const Vec2 fd = (com_jacobian(m, kp) * v - com_jacobian(m, km) * v) / (2 * h);
    CHECK((com_bias_acceleration(m, kin) - fd).norm() < 1e-5);
  }
}

TEST_CASE("momentum balance: total CoM force equals gravity plus contacts") {
  const RobotModel m = RobotModel::defaults();
  const Terrain terrain = Terrain::flat(0.8);
  const ContactParams cp;
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Vector9d q = testutil::random_q(rng);
    q(1) = rng.uniform(0.55, 0.85);  // some trials touch the ground
    const Vector9d v = testutil::random_v(rng, 1.0);
    Vector6d tau;
    for (int i = 0; i < 6; ++i) tau(i) = rng.uniform(-20.0, 20.0);

    const Kinematics kin = forward_kinematics(m, q, v);
    const auto contacts = contact_model(m, kin, terrain, cp);
    const Vector9d qdd = forward_dynamics(m, q, v, tau, contacts);
    const auto acc = acceleration_pass(m, kin, qdd);

    Vec2 total_force = Vec2::Zero();
    double total_moment = 0.0;  // about the world origin
    for (int l = 0; l < kNumLinks; ++l) {
      const Vec2 f = m.link[l].mass * acc[l].a_com;
      total_force += f;
      total_moment += m.link[l].inertia * acc[l].domega + cross2(kin.link[l].com, f);
    }
    Vec2 expected_force = Vec2(0.0, -m.gravity * m.total_mass());
    double expected_moment = 0.0;
    for (int l = 0; l < kNumLinks; ++l)
      expected_moment += cross2(kin.link[l].com,
                                Vec2(0.0, -m.gravity * m.link[l].mass));
    for (const auto& w : contacts) {
      expected_force += w.force();
      expected_moment += cross2(w.position, w.force());
    }
    CHECK((total_force - expected_force).norm() < 1e-7);
    CHECK(std::abs(total_moment - expected_moment) < 1e-7);
  }
}

TEST_CASE("passive swing conserves energy at 1 kHz") {
  const RobotModel m = frictionless_model();
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s;
  s.q.setZero();
  s.q(1) = 2.0;  // high enough to stay airborne
  s.q(3) = 0.8;
  s.q(4) = -0.5;
  s.q(6) = -0.4;
  s.q(8) = 0.3;
  s.v.setZero();
  s.v(2) = 0.5;
  s.v(3) = -1.0;
  s.v(7) = 0.8;

  // Remove gravity so the robot stays in place and swings; total energy must
  // be conserved by the symplectic integrator up to a slow drift.
  RobotModel m0 = m;
  m0.gravity = 1e-12;  // validate() requires > 0; physically zero
  const double e0 = total_energy(m0, s.q, s.v);
  for (int k = 0; k < 1000; ++k) {
    const auto info = step(s, m0, terrain, cp, 1e-3);
    REQUIRE(info.ok);
    REQUIRE(info.contacts.empty());
  }
  const double e1 = total_energy(m0, s.q, s.v);
  CHECK(std::abs(e1 - e0) / std::abs(e0) < 0.005);  // < 0.5% over 1 s
}

TEST_CASE("ballistic flight: CoM follows the parabola") {
  const RobotModel m = RobotModel::defaults();  // friction on: internal only
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s;
  s.q.setZero();
  s.q(1) = 3.0;
  s.q(3) = 0.5;
  s.q(4) = -0.7;
  s.q(6) = -0.2;
  s.v.setZero();
  s.v(0) = 0.4;
  s.v(1) = 1.0;
  s.v(2) = 0.3;
  s.v(4) = 0.6;
  s.v(7) = -0.5;

  const auto [x0, v0] = com_state(m, s);
  const double g = m.gravity;
  // Semi-implicit Euler is a staggered (leapfrog) scheme: the stored velocity
  // belongs to the half step, so the matching projectile starts with
  // v0 - g*dt/2. Without this shift the discrete free fall lags the parabola
  // by g*dt*t/2, which is integrator phase, not dynamics error.
  const Vec2 v0_eff = v0 + 0.5 * 1e-3 * Vec2(0.0, -g);
  double worst = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const auto info = step(s, m, terrain, cp, 1e-3);
    REQUIRE(info.ok);
    REQUIRE(info.contacts.empty());
    const double t = 1e-3 * k;
    const auto [x, v] = com_state(m, s);
    const Vec2 ref = x0 + t * v0_eff + 0.5 * t * t * Vec2(0.0, -g);
    worst = std::max(worst, (x - ref).norm());
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("step: halving dt converges toward the fine-grid reference") {
  const RobotModel m = RobotModel::defaults();
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState init;
  init.q.setZero();
  init.q(1) = 2.0;
  init.q(3) = 0.4;
  init.q(4) = -0.6;
  init.v(0) = 0.2;
  init.v(3) = 0.8;
  init.v(7) = -0.5;

  auto integrate = [&](double dt, int steps) {
    SimState s = init;
    for (int k = 0; k < steps; ++k) REQUIRE(step(s, m, terrain, cp, dt).ok);
    return s;
  };
  // 0.2 s horizon at dt, dt/2, dt/4 against a dt/16 reference.
  const SimState ref = integrate(1e-3 / 16, 3200);
  const double e1 = (integrate(1e-3, 200).q - ref.q).norm();
  const double e2 = (integrate(5e-4, 400).q - ref.q).norm();
  const double e4 = (integrate(2.5e-4, 800).q - ref.q).norm();
  CHECK(e2 < 0.6 * e1);
  CHECK(e4 < 0.6 * e2);
}

TEST_CASE("step: a balanced static state is a fixed point") {
  RobotModel m = frictionless_model();
  m.gravity = 1e-12;
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s;
  s.q.setZero();
  s.q(1) = 2.0;
  s.q(3) = 0.7;
  s.q(4) = -0.9;
  const Vector9d q0 = s.q;
  for (int k = 0; k < 100; ++k) REQUIRE(step(s, m, terrain, cp, 1e-3).ok);
  CHECK((s.q - q0).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(s.v.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("com velocity matches finite differences across a step") {
  const RobotModel m = RobotModel::defaults();
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s;
  s.q.setZero();
  s.q(1) = 2.0;
  s.v(0) = 0.3;
  s.v(3) = 0.5;
  const auto before = com_state(m, s);
  step(s, m, terrain, cp, 1e-3);
  const auto after = com_state(m, s);
  const Vec2 fd = (after.first - before.first) / 1e-3;
  CHECK((fd - after.second).norm() < 5e-3);  // O(dt) agreement
}

TEST_CASE("contact model: penalty formula and friction cap") {
  const RobotModel m = RobotModel::defaults();
  const ContactParams cp;
  Terrain terrain = Terrain::flat(0.6);

  // Pose the left foot flat, slightly penetrating, moving with a known slip.
  SimState s = standing_state(m, 0.0, 0.3);
  s.q(1) -= 0.002;  // push everything 2 mm into the ground
  s.v(0) = 0.01;    // slow slip: viscous regime
  Kinematics kin = forward_kinematics(m, s.q, s.v);
  auto contacts = contact_model(m, kin, terrain, cp);
  REQUIRE(contacts.size() == 4);
  for (const auto& w : contacts) {
    const double pen = terrain.height(w.position.x()) -
                       kin.contact_point(m, w.point).y();
    CHECK(w.normal ==
          doctest::Approx(cp.normal_stiffness * pen).epsilon(1e-9));
    CHECK(w.tangent == doctest::Approx(-cp.tangent_gain * 0.01).epsilon(1e-9));
  }

  // Fast slip: tangential force capped by the friction cone.
  s.v(0) = 2.0;
  kin = forward_kinematics(m, s.q, s.v);
  contacts = contact_model(m, kin, terrain, cp);
  REQUIRE(contacts.size() == 4);
  for (const auto& w : contacts) {
    CHECK(w.tangent == doctest::Approx(-terrain.friction * w.normal).epsilon(1e-9));
    CHECK(std::abs(w.tangent) <= terrain.friction * w.normal + 1e-12);
  }

  // Separated foot: no wrench.
  s.q(1) += 0.05;
  kin = forward_kinematics(m, s.q, s.v);
  CHECK(contact_model(m, kin, terrain, cp).empty());

  // Fast retraction: damping cannot make the normal force negative.
  s.q(1) -= 0.05;
  s.v.setZero();
  s.v(1) = 1.0;
  kin = forward_kinematics(m, s.q, s.v);
  CHECK(contact_model(m, kin, terrain, cp).empty());
}

TEST_CASE("actuation pipeline: integer and fractional delays") {
  const RobotModel m = RobotModel::defaults();
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;

  SimState s;
  s.q.setZero();
  s.q(1) = 2.0;
  Vector6d tau_a = Vector6d::Constant(1.0);

  // 3 ms delay: the command must first appear on the plant 3 steps later.
  command_torque(s, tau_a, 0.003);
  for (int k = 0; k < 6; ++k) {
    const auto info = step(s, m, terrain, cp, 1e-3);
    const double expect = k < 3 ? 0.0 : 1.0;
    CHECK(info.applied_torque(0) == doctest::Approx(expect).epsilon(1e-12));
  }

  // 2.5 ms delay: the straddling step integrates half old, half new torque.
  SimState s2;
  s2.q.setZero();
  s2.q(1) = 2.0;
  command_torque(s2, tau_a, 0.0025);
  std::vector<double> trace;
  for (int k = 0; k < 4; ++k)
    trace.push_back(step(s2, m, terrain, cp, 1e-3).applied_torque(0));
  CHECK(trace[0] == doctest::Approx(0.0));
  CHECK(trace[1] == doctest::Approx(0.0));
  CHECK(trace[2] == doctest::Approx(0.5));
  CHECK(trace[3] == doctest::Approx(1.0));

  // Efficiency scales the plant torque.
  SimState s3;
  s3.q.setZero();
  s3.q(1) = 2.0;
  s3.efficiency = 0.8;
  command_torque(s3, tau_a, 0.0);
  CHECK(step(s3, m, terrain, cp, 1e-3).applied_torque(0) ==
        doctest::Approx(0.8));

  // Saturation at the joint limits.
  SimState s4;
  s4.q.setZero();
  s4.q(1) = 2.0;
  command_torque(s4, Vector6d::Constant(1e4), 0.0);
  const auto info = step(s4, m, terrain, cp, 1e-3);
  for (int j = 0; j < 6; ++j)
    CHECK(info.applied_torque(j) == doctest::Approx(m.joint[j].torque_limit));
}

TEST_CASE("leg IK round trips through forward kinematics") {
  const RobotModel m = RobotModel::defaults();
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const double torso = rng.uniform(-0.3, 0.3);
    const double pitch = rng.uniform(-0.3, 0.3);
    const double reach = rng.uniform(0.35, 0.78);
    const double dir = rng.uniform(-0.9, 0.9);
    const Vec2 target(reach * std::sin(dir), -reach * std::cos(dir));
    double hip, knee, ankle;
    REQUIRE(leg_ik(m, target, torso, pitch, &hip, &knee, &ankle));
    CHECK(knee <= 1e-9);  // knee bends backward

    Vector9d q = Vector9d::Zero();
    q(1) = 1.5;
    q(2) = torso;
    q(3) = hip;
    q(4) = knee;
    q(5) = ankle;
    const Kinematics kin = forward_kinematics(m, q, Vector9d::Zero());
    const Vec2 hip_to_ankle = kin.link[kFootL].origin - kin.link[kThighL].origin;
    CHECK((hip_to_ankle - target).norm() < 1e-9);
    CHECK(kin.link[kFootL].theta == doctest::Approx(pitch).epsilon(1e-9));
  }
  // Unreachable targets are rejected.
  double a, b, c;
  CHECK_FALSE(leg_ik(m, Vec2(0.0, -0.85), 0.0, 0.0, &a, &b, &c));
}

TEST_CASE("standing state: CoM on target, soles on the ground") {
  const RobotModel m = RobotModel::defaults();
  const SimState s = standing_state(m, -0.05, 0.12);
  const auto [com, com_vel] = com_state(m, s);
  CHECK(com.x() == doctest::Approx(0.5 * (-0.05 + 0.12)).epsilon(1e-9));
  CHECK(com.y() == doctest::Approx(m.com_height_nominal).epsilon(1e-9));
  CHECK(com_vel.norm() == doctest::Approx(0.0));
  const Kinematics kin = forward_kinematics(m, s.q, s.v);
  for (int cpt = 0; cpt < kNumContactPoints; ++cpt)
    CHECK(std::abs(kin.contact_point(m, cpt).y()) < 1e-9);
  CHECK(kin.foot_pose(m, kLeft)(0) == doctest::Approx(-0.05).epsilon(1e-9));
  CHECK(kin.foot_pose(m, kRight)(0) == doctest::Approx(0.12).epsilon(1e-9));
}

TEST_CASE("joint friction dissipates a passive swing") {
  const RobotModel m = RobotModel::defaults();  // friction enabled
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s;
  s.q.setZero();
  s.q(1) = 2.0;
  s.v(3) = 2.0;
  s.v(7) = -1.5;
  RobotModel m0 = m;
  m0.gravity = 1e-12;
  const double e0 = total_energy(m0, s.q, s.v);
  double e_prev = e0;
  for (int k = 0; k < 5000; ++k) {
    REQUIRE(step(s, m0, terrain, cp, 1e-3).ok);
    if (k % 500 == 499) {
      const double e = total_energy(m0, s.q, s.v);
      CHECK(e <= e_prev + 1e-9);
      e_prev = e;
    }
  }
  // Dry friction brings the joints to rest (up to the tanh chatter floor).
  // The base keeps tumbling with whatever angular momentum is left over,
  // which friction cannot touch, so only relative motion is checked.
  CHECK(s.v.tail<6>().cwiseAbs().maxCoeff() < 0.1);
}

TEST_CASE("double support settles with normal forces carrying the weight") {
  const RobotModel m = RobotModel::defaults();
  const Terrain terrain = Terrain::flat();
  const ContactParams cp;
  SimState s = standing_state(m, -0.09, 0.09);
  // Hold the posture with a stiff joint PD while gravity loads the contacts.
  const Vector6d q_ref = s.q.tail<6>();
  Vector6d kp, kd;
  kp << 200, 200, 30, 200, 200, 30;  // soft ankles: the foot link is light
  kd << 10, 10, 0.5, 10, 10, 0.5;
  // Settle for 1 s, then average the total normal force over 0.2 s. The
  // viscous tangential model cannot stick, so open-loop holds creep slowly;
  // the window is measured before the creep matters.
  double normal_sum = 0.0;
  int samples = 0;
  for (int k = 0; k < 1200; ++k) {
    const Vector6d tau = kp.cwiseProduct(q_ref - s.q.tail<6>()) -
                         kd.cwiseProduct(s.v.tail<6>());
    command_torque(s, tau, 0.0);
    const auto info = step(s, m, terrain, cp, 1e-3);
    REQUIRE(info.ok);
    if (k >= 1000) {
      for (const auto& w : info.contacts) {
        normal_sum += w.normal;
        CHECK(w.normal >= 0.0);
        CHECK(std::abs(w.tangent) <= terrain.friction * w.normal + 1e-9);
      }
      ++samples;
    }
  }
  const double mean_normal = normal_sum / samples;
  CHECK(std::abs(mean_normal - m.total_mass() * m.gravity) <
        0.02 * m.total_mass() * m.gravity);
}

TEST_CASE("model validation rejects broken parameters") {
  RobotModel m = RobotModel::defaults();
  CHECK_NOTHROW(m.validate());
  m.link[kTorso].mass = 0.0;
  CHECK_THROWS(m.validate());
  m = RobotModel::defaults();
  m.heel_x = 0.2;  // heel in front of toe
  CHECK_THROWS(m.validate());
  m = RobotModel::defaults();
  m.joint[kHipL].torque_limit = -1.0;
  CHECK_THROWS(m.validate());

  Terrain t;
  t.knot_x = {0.0, 0.0};
  t.knot_h = {0.0, 0.1};
  CHECK_THROWS(t.validate());
}

TEST_CASE("total mass sums the links") {
  const RobotModel m = RobotModel::defaults();
  double sum = 0.0;
  for (int l = 0; l < kNumLinks; ++l) sum += m.link[l].mass;
  CHECK(m.total_mass() == doctest::Approx(sum).epsilon(1e-15));
  CHECK(m.total_mass() == doctest::Approx(10.0 + 2 * 1.5 + 2 * 1.0 + 2 * 0.7));
}

TEST_CASE("dcm definition") {
  const RobotModel m = RobotModel::defaults();
  SimState s = standing_state(m, 0.0, 0.1);
  s.v(0) = 0.3;
  const double b = std::sqrt(m.com_height_nominal / m.gravity);
  const auto [x, v] = com_state(m, s);
  CHECK((dcm(m, s, b) - (x + b * v)).norm() < 1e-14);
}
