#include <cmath>
#include <vector>

#include "dcmwalk/core/rng.hpp"
#include "dcmwalk/dr/randomization.hpp"
#include "dcmwalk/dyn/simulator.hpp"
#include "dcmwalk/planner/gait.hpp"
#include "dcmwalk/wbc/controller.hpp"
#include "doctest.h"

using namespace dcmwalk;

namespace {

double mean_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  return m / xs.size();
}

double stddev_of(const std::vector<double>& xs) {
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / (xs.size() - 1));
}

}  // namespace

TEST_CASE("beta zero degenerates every scaled distribution exactly") {
  dr::RandomizationConfig cfg;
  cfg.beta = 0.0;
  Rng rng(7);

  const auto nominal = dyn::RobotModel::defaults();
  const dr::ModelDraw draw = dr::randomize_model(nominal, cfg, rng);
  for (int i = 0; i < dyn::kNumLinks; ++i) {
    CHECK(draw.model.link[i].mass == nominal.link[i].mass);
    CHECK(draw.model.link[i].inertia == nominal.link[i].inertia);
    CHECK(draw.mass_scale[i] == 1.0);
  }
  for (int j = 0; j < dyn::kNumJoints; ++j) {
    CHECK(draw.model.joint[j].dry_friction == nominal.joint[j].dry_friction);
    CHECK(draw.model.joint[j].damping == nominal.joint[j].damping);
  }

  dyn::SimState s = dyn::standing_state(nominal, -0.05, 0.05);
  const dyn::SimState noisy = dr::perturb_state(s, cfg, rng);
  CHECK((noisy.q.array() == s.q.array()).all());
  CHECK((noisy.v.array() == s.v.array()).all());

  // Motor delay and floor friction keep their full ranges at beta = 0.
  for (int k = 0; k < 200; ++k) {
    const dr::ActuationDraw a = dr::sample_actuation(cfg, rng);
    CHECK(a.alpha_decay == 1.0);
    CHECK(a.delay_ms >= 2.0);
    CHECK(a.delay_ms <= 4.0);
  }
  const dyn::Terrain t = dr::randomize_terrain(cfg, rng);
  CHECK(t.friction >= 0.5);
  CHECK(t.friction <= 1.1);
  for (double h : t.knot_h) CHECK(h == 0.0);
}

TEST_CASE("full-level mass scales stay inside the table range") {
  dr::RandomizationConfig cfg;
  cfg.beta = 1.0;
  Rng rng(13);
  const auto nominal = dyn::RobotModel::defaults();
  for (int k = 0; k < 2000; ++k) {
    const dr::ModelDraw d = dr::randomize_model(nominal, cfg, rng);
    for (int i = 0; i < dyn::kNumLinks; ++i) {
      CHECK(d.mass_scale[i] >= 0.8);
      CHECK(d.mass_scale[i] <= 1.5);
      CHECK(d.model.link[i].mass ==
            doctest::Approx(nominal.link[i].mass * d.mass_scale[i])
                .epsilon(1e-15));
      // Inertia scales proportionally to mass.
      CHECK(d.model.link[i].inertia / d.model.link[i].mass ==
            doctest::Approx(nominal.link[i].inertia / nominal.link[i].mass)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("table statistics at one hundred thousand draws") {
  dr::RandomizationConfig cfg;
  cfg.beta = 1.0;
  const auto nominal = dyn::RobotModel::defaults();
  const int n = 100000;

  SUBCASE("sensor noise deviations") {
    Rng rng(21);
    dyn::SimState zero;
    std::vector<double> torso_x, joint_pos, joint_vel, lin_vel;
    torso_x.reserve(n);
    joint_pos.reserve(n);
    joint_vel.reserve(n);
    lin_vel.reserve(n);
    for (int k = 0; k < n; ++k) {
      const dyn::SimState s = dr::perturb_state(zero, cfg, rng);
      torso_x.push_back(s.q(0));
      lin_vel.push_back(s.v(0));
      joint_pos.push_back(s.q(3));
      joint_vel.push_back(s.v(3));
    }
    CHECK(std::abs(stddev_of(torso_x) - 0.05) < 0.002);
    CHECK(std::abs(stddev_of(joint_pos) - 0.05) < 0.002);
    CHECK(std::abs(stddev_of(lin_vel) - 0.1) < 0.003);
    CHECK(std::abs(stddev_of(joint_vel) - 0.1) < 0.003);
    CHECK(std::abs(mean_of(joint_pos)) < 0.001);
  }

  SUBCASE("actuation draws") {
    Rng rng(22);
    std::vector<double> alpha, delay;
    alpha.reserve(n);
    delay.reserve(n);
    for (int k = 0; k < n; ++k) {
      const dr::ActuationDraw a = dr::sample_actuation(cfg, rng);
      CHECK(a.delay_ms >= 2.0);
      CHECK(a.delay_ms <= 4.0);
      CHECK(a.alpha_decay >= 0.8);
      CHECK(a.alpha_decay <= 1.0);
      alpha.push_back(a.alpha_decay);
      delay.push_back(a.delay_ms);
    }
    CHECK(std::abs(mean_of(alpha) - 0.9) < 0.005);
    CHECK(std::abs(mean_of(delay) - 3.0) < 0.006);
  }

  SUBCASE("dynamics scale means") {
    Rng rng(23);
    std::vector<double> mass, fric, damp;
    for (int k = 0; k < 15000; ++k) {
      const dr::ModelDraw d = dr::randomize_model(nominal, cfg, rng);
      for (double s : d.mass_scale) mass.push_back(s);
      for (double s : d.friction_scale) fric.push_back(s);
      for (double s : d.damping_scale) damp.push_back(s);
    }
    CHECK(std::abs(mean_of(mass) - 1.15) < 0.003);   // U(0.8, 1.5)
    CHECK(std::abs(mean_of(fric) - 0.80) < 0.003);   // U(0.5, 1.1)
    CHECK(std::abs(mean_of(damp) - 0.85) < 0.003);   // U(0.5, 1.2)
  }

  SUBCASE("floor friction range") {
    Rng rng(24);
    std::vector<double> mu;
    for (int k = 0; k < 10000; ++k) {
      const dyn::Terrain t = dr::randomize_terrain(cfg, rng);
      CHECK(t.friction >= 0.5);
      CHECK(t.friction <= 1.1);
      mu.push_back(t.friction);
    }
    CHECK(std::abs(mean_of(mu) - 0.8) < 0.01);
  }
}

TEST_CASE("noise draws are uncorrelated across calls") {
  dr::RandomizationConfig cfg;
  cfg.beta = 1.0;
  Rng rng(31);
  dyn::SimState zero;
  const int n = 100000;
  std::vector<double> xs;
  xs.reserve(n);
  for (int k = 0; k < n; ++k)
    xs.push_back(dr::perturb_state(zero, cfg, rng).q(3));
  const double m = mean_of(xs);
  const double var = stddev_of(xs) * stddev_of(xs);
  for (int lag : {1, 5}) {
    double acc = 0.0;
    for (int k = 0; k + lag < n; ++k) acc += (xs[k] - m) * (xs[k + lag] - m);
    acc /= (n - lag) * var;
    CHECK(std::abs(acc) < 0.01);
  }
}

TEST_CASE("lower beta is nested inside higher beta") {
  const auto nominal = dyn::RobotModel::defaults();
  dr::RandomizationConfig lo_cfg, hi_cfg;
  lo_cfg.beta = 0.3;
  hi_cfg.beta = 0.7;

  Rng rng(41);
  std::vector<double> lo_noise, hi_noise;
  dyn::SimState zero;
  for (int k = 0; k < 20000; ++k) {
    const dr::ModelDraw d = dr::randomize_model(nominal, lo_cfg, rng);
    for (double s : d.mass_scale) {
      CHECK(s >= 1.0 - 0.2 * 0.3);
      CHECK(s <= 1.0 + 0.5 * 0.3);
      // Automatically inside the wider beta = 0.7 support.
      CHECK(s >= 1.0 - 0.2 * 0.7);
      CHECK(s <= 1.0 + 0.5 * 0.7);
    }
    lo_noise.push_back(dr::perturb_state(zero, lo_cfg, rng).q(3));
    hi_noise.push_back(dr::perturb_state(zero, hi_cfg, rng).q(3));
  }
  CHECK(stddev_of(lo_noise) < stddev_of(hi_noise));
  CHECK(stddev_of(lo_noise) == doctest::Approx(0.05 * 0.3).epsilon(0.05));
  CHECK(stddev_of(hi_noise) == doctest::Approx(0.05 * 0.7).epsilon(0.05));

  // Motor delay is deliberately not nested: full range at every beta.
  Rng r2(42);
  dr::RandomizationConfig zero_cfg;
  zero_cfg.beta = 0.0;
  double lo = 10.0, hi = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const double d = dr::sample_actuation(zero_cfg, r2).delay_ms;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(lo < 2.1);
  CHECK(hi > 3.9);
}

TEST_CASE("the nominal model is never mutated by a draw") {
  const auto nominal = dyn::RobotModel::defaults();
  const auto reference = nominal;
  dr::RandomizationConfig cfg;
  cfg.beta = 1.0;
  Rng rng(51);
  (void)dr::randomize_model(nominal, cfg, rng);
  for (int i = 0; i < dyn::kNumLinks; ++i) {
    CHECK(nominal.link[i].mass == reference.link[i].mass);
    CHECK(nominal.link[i].inertia == reference.link[i].inertia);
  }
  for (int j = 0; j < dyn::kNumJoints; ++j) {
    CHECK(nominal.joint[j].damping == reference.joint[j].damping);
    CHECK(nominal.joint[j].dry_friction == reference.joint[j].dry_friction);
  }
}

TEST_CASE("identical seeds reproduce the full draw pipeline") {
  const auto nominal = dyn::RobotModel::defaults();
  dr::RandomizationConfig cfg;
  cfg.beta = 0.8;

  auto run = [&](std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> trace;
    const dr::ModelDraw d = dr::randomize_model(nominal, cfg, rng);
    for (double s : d.mass_scale) trace.push_back(s);
    const dyn::Terrain t = dr::randomize_terrain(cfg, rng);
    trace.push_back(t.friction);
    for (double h : t.knot_h) trace.push_back(h);
    dyn::SimState zero;
    for (int k = 0; k < 100; ++k) {
      trace.push_back(dr::perturb_state(zero, cfg, rng).q(5));
      const dr::ActuationDraw a = dr::sample_actuation(cfg, rng);
      trace.push_back(a.delay_ms);
      trace.push_back(a.alpha_decay);
    }
    return trace;
  };

  const auto a = run(97), b = run(97), c = run(98);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  bool any_diff = false;
  for (size_t i = 0; i < a.size(); ++i) any_diff |= (a[i] != c[i]);
  CHECK(any_diff);
}

TEST_CASE("delayed torque release matches a hand-built schedule") {
  const auto model = dyn::RobotModel::defaults();
  const auto terrain = dyn::Terrain::flat(0.8);
  const dyn::ContactParams cp;

  dyn::SimState s = dyn::standing_state(model, -0.05, 0.05);
  const double alpha = 0.9;
  const double delay_ms = 3.0;
  const int joint = 1;  // left knee

  // Commands alternate sign every control period (5 ms).
  std::vector<double> applied;
  for (int tick = 0; tick < 8; ++tick) {
    const double cmd = (tick % 2 == 0) ? 2.0 : -2.0;
    Vector6d tau = Vector6d::Zero();
    tau(joint) = cmd;
    dr::apply_actuation(s, tau, {delay_ms, alpha});
    for (int i = 0; i < 5; ++i) {
      const dyn::StepInfo info = dyn::step(s, model, terrain, cp, 1e-3);
      applied.push_back(info.applied_torque(joint));
    }
  }

  // The release lands exactly on a millisecond boundary: three steps of the
  // previous command, then two of the new one, everything scaled by alpha.
  for (int tick = 0; tick < 8; ++tick) {
    const double prev = (tick == 0) ? 0.0 : ((tick - 1) % 2 == 0 ? 2.0 : -2.0);
    const double cur = (tick % 2 == 0) ? 2.0 : -2.0;
    for (int i = 0; i < 5; ++i) {
      const double expect = alpha * (i < 3 ? prev : cur);
      CHECK(applied[5 * tick + i] == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  // Zero delay applies the new command immediately, scaled by efficiency.
  dyn::SimState s2 = dyn::standing_state(model, -0.05, 0.05);
  Vector6d tau = Vector6d::Zero();
  tau(joint) = 10.0;
  dr::apply_actuation(s2, tau, {0.0, 0.9});
  const dyn::StepInfo info = dyn::step(s2, model, terrain, cp, 1e-3);
  CHECK(info.applied_torque(joint) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("unevenness profile is bounded, spaced and flat at the spawn") {
  dr::RandomizationConfig cfg;
  cfg.beta = 1.0;
  Rng rng(61);
  const dyn::Terrain t = dr::randomize_terrain(cfg, rng);

  REQUIRE(t.knot_x.size() == t.knot_h.size());
  REQUIRE(t.knot_x.size() > 10);
  for (size_t i = 0; i + 1 < t.knot_x.size(); ++i)
    CHECK(t.knot_x[i + 1] - t.knot_x[i] ==
          doctest::Approx(cfg.terrain_spacing).epsilon(1e-12));
  for (size_t i = 0; i < t.knot_x.size(); ++i) {
    CHECK(std::abs(t.knot_h[i]) <= cfg.unevenness + 1e-15);
    if (std::abs(t.knot_x[i]) <= cfg.spawn_pad) CHECK(t.knot_h[i] == 0.0);
  }
  CHECK(t.height(0.0) == 0.0);
  CHECK(t.height(0.25) == 0.0);

  bool any_nonzero = false;
  for (double h : t.knot_h) any_nonzero |= (h != 0.0);
  CHECK(any_nonzero);

  dr::RandomizationConfig half = cfg;
  half.beta = 0.5;
  Rng rng2(61);
  const dyn::Terrain th = dr::randomize_terrain(half, rng2);
  for (double h : th.knot_h) CHECK(std::abs(h) <= 0.5 * cfg.unevenness + 1e-15);
}

TEST_CASE("randomization config parses and validates") {
  const Config file = Config::parse_string(
      "[randomization]\n"
      "beta = 0.5\n"
      "unevenness = 0.02\n"
      "sensor_noise = false\n");
  const dr::RandomizationConfig c = dr::RandomizationConfig::from_config(file);
  CHECK(c.beta == doctest::Approx(0.5));
  CHECK(c.unevenness == doctest::Approx(0.02));
  CHECK(!c.sensor_noise);
  CHECK(c.delay_ms_lo == doctest::Approx(2.0));

  dr::RandomizationConfig bad;
  bad.beta = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = dr::RandomizationConfig{};
  bad.delay_ms_hi = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = dr::RandomizationConfig{};
  bad.sigma_joint_pos = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("controller still walks under live beta-zero actuation draws") {
  // Level zero keeps motor delay and floor friction random; the nominal
  // controller has to cope with both.
  const auto model = dyn::RobotModel::defaults();
  dr::RandomizationConfig cfg;
  cfg.beta = 0.0;
  Rng rng(71);
  const dyn::Terrain terrain = dr::randomize_terrain(cfg, rng);

  planner::GaitParams gait;
  wbc::WbcGains gains;
  wbc::WbcController ctrl(model, gains, terrain, gait);

  dyn::SimState s = dyn::standing_state(model, -0.05, 0.05);
  ctrl.set_command(0.2);
  ctrl.reset(s.t, s.q, s.v, dyn::kRight);

  const dyn::ContactParams cp;
  double mean_e = 0.0;
  int ticks = 0;
  bool fell = false;
  for (int k = 0; k < 600 && !fell; ++k) {  // 3 s at 200 Hz
    const wbc::WbcOutput out = ctrl.tick(s.t, s.q, s.v);
    mean_e += out.errors.e_xi.norm();
    ++ticks;
    if (out.errors.e_xi.norm() > 0.2) fell = true;
    dr::apply_actuation(s, out.tau, dr::sample_actuation(cfg, rng));
    for (int i = 0; i < 5; ++i) dyn::step(s, model, terrain, cp, 1e-3);
  }
  CHECK(!fell);
  CHECK(mean_e / ticks < 0.05);
}
