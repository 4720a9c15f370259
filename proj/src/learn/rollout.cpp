#include "dcmwalk/learn/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcmwalk/learn/losses.hpp"
#include "dcmwalk/policy/base_policy.hpp"
#include "dcmwalk/policy/oracle_policy.hpp"
#include "json.hpp"

namespace dcmwalk::learn {

void RolloutContext::validate() const {
  if (control_dt <= 0.0 || sim_substeps <= 0)
    throw std::invalid_argument("rollout: control_dt and substeps must be positive");
  if (episode_seconds <= 0.0 || command_interval <= 0.0)
    throw std::invalid_argument("rollout: episode and command periods must be positive");
  if (command_lo > command_hi)
    throw std::invalid_argument("rollout: command bounds disordered");
  if (!(residual_scale > 0.0 && residual_scale <= 1.0))
    throw std::invalid_argument("rollout: residual_scale must lie in (0, 1]");
  dr.validate();
  reward.validate();
  scales.validate();
}

RolloutContext RolloutContext::from_config(const Config& cfg) {
  RolloutContext ctx;
  ctx.gait = planner::GaitParams::from_config(cfg, ctx.nominal.gravity);
  ctx.gains = wbc::WbcGains::from_config(cfg);
  ctx.dr = dr::RandomizationConfig::from_config(cfg);
  ctx.reward = policy::RewardParams::from_config(cfg);
  ctx.scales = policy::ObsScales::from_config(cfg);
  ctx.control_dt = cfg.get_double("rollout.control_dt", ctx.control_dt);
  ctx.sim_substeps = cfg.get_int("rollout.sim_substeps", ctx.sim_substeps);
  ctx.episode_seconds =
      cfg.get_double("rollout.episode_seconds", ctx.episode_seconds);
  ctx.command_interval =
      cfg.get_double("rollout.command_interval", ctx.command_interval);
  ctx.command_lo = cfg.get_double("rollout.command_lo", ctx.command_lo);
  ctx.command_hi = cfg.get_double("rollout.command_hi", ctx.command_hi);
  ctx.filter_cutoff_hz =
      cfg.get_double("rollout.filter_cutoff_hz", ctx.filter_cutoff_hz);
  ctx.filter_enabled = cfg.get_bool("rollout.filter_enabled", ctx.filter_enabled);
  ctx.same_step_supervision =
      cfg.get_bool("rollout.same_step_supervision", ctx.same_step_supervision);
  ctx.residual_scale = cfg.get_double("rollout.residual_scale", ctx.residual_scale);
  ctx.validate();
  return ctx;
}

std::string EpisodeDrawLog::to_json_line() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["beta"] = beta;
  j["mass_scale"] = mass_scale;
  j["friction_scale"] = friction_scale;
  j["damping_scale"] = damping_scale;
  j["floor_friction"] = floor_friction;
  j["terrain_knot_h"] = terrain_knot_h;
  std::vector<double> delays, alphas;
  delays.reserve(actuation.size());
  alphas.reserve(actuation.size());
  for (const auto& d : actuation) {
    delays.push_back(d.delay_ms);
    alphas.push_back(d.alpha_decay);
  }
  j["delay_ms"] = delays;
  j["alpha_decay"] = alphas;
  j["commands"] = commands;
  return j.dump();
}

EpisodeDrawLog EpisodeDrawLog::from_json_line(const std::string& line) {
  const nlohmann::json j = nlohmann::json::parse(line);
  EpisodeDrawLog log;
  log.seed = j.at("seed").get<std::uint64_t>();
  log.beta = j.at("beta").get<double>();
  log.mass_scale = j.at("mass_scale").get<std::vector<double>>();
  log.friction_scale = j.at("friction_scale").get<std::vector<double>>();
  log.damping_scale = j.at("damping_scale").get<std::vector<double>>();
  log.floor_friction = j.at("floor_friction").get<double>();
  log.terrain_knot_h = j.at("terrain_knot_h").get<std::vector<double>>();
  const auto delays = j.at("delay_ms").get<std::vector<double>>();
  const auto alphas = j.at("alpha_decay").get<std::vector<double>>();
  if (delays.size() != alphas.size())
    throw std::invalid_argument("draw log: delay/decay length mismatch");
  log.actuation.resize(delays.size());
  for (std::size_t i = 0; i < delays.size(); ++i)
    log.actuation[i] = {delays[i], alphas[i]};
  log.commands = j.at("commands").get<std::vector<double>>();
  return log;
}

Vector6d action_bound(Variant v, const RolloutContext& ctx) {
  const Vector6d limits = ctx.nominal.torque_limits();
  return is_direct_torque(v) ? limits : Vector6d(ctx.residual_scale * limits);
}

EpisodeResult collect_episode(Variant v, const RolloutContext& ctx,
                              const nn::PolicyNet& net,
                              const nn::CriticNet& critic, std::uint64_t seed,
                              const RolloutOptions& opts) {
  if (!is_trained(v))
    throw std::invalid_argument("collect_episode: variant has no network in the loop");
  ctx.validate();

  // Independent streams so draw counts in one channel never shift another.
  Rng root(seed);
  Rng model_rng = root.split(0);
  Rng noise_rng = root.split(1);
  Rng act_rng = root.split(2);
  Rng action_rng = root.split(3);
  Rng cmd_rng = root.split(4);

  const dr::ModelDraw md = dr::randomize_model(ctx.nominal, ctx.dr, model_rng);
  const dyn::Terrain terrain = dr::randomize_terrain(ctx.dr, model_rng);

  EpisodeResult ep;
  ep.draws.seed = seed;
  ep.draws.beta = ctx.dr.beta;
  ep.draws.mass_scale.assign(md.mass_scale.begin(), md.mass_scale.end());
  ep.draws.friction_scale.assign(md.friction_scale.begin(),
                                 md.friction_scale.end());
  ep.draws.damping_scale.assign(md.damping_scale.begin(),
                                md.damping_scale.end());
  ep.draws.floor_friction = terrain.friction;
  ep.draws.terrain_knot_h = terrain.knot_h;

  dyn::SimState s = dyn::standing_state(md.model, -0.05, 0.05);
  policy::BasePolicy base(ctx.nominal, ctx.gains,
                          dyn::Terrain::flat(ctx.dr.nominal_floor_mu), ctx.gait,
                          ctx.filter_cutoff_hz, ctx.filter_enabled);
  policy::OraclePolicy oracle(md.model, ctx.gains, terrain, ctx.gait);

  const dyn::SimState s0_obs = dr::perturb_state(s, ctx.dr, noise_rng);
  base.reset(s.t, s0_obs.q, s0_obs.v, dyn::kRight);
  oracle.reset(s.t, s.q, s.v, dyn::kRight);

  std::vector<Eigen::VectorXd> hidden = net.initial_hidden();
  const Vector6d bound = action_bound(v, ctx);
  const Vector6d limits = ctx.nominal.torque_limits();
  const bool direct = is_direct_torque(v);

  const int t_max =
      static_cast<int>(std::lround(ctx.episode_seconds / ctx.control_dt));
  const int cmd_ticks = std::max(
      1, static_cast<int>(std::lround(ctx.command_interval / ctx.control_dt)));

  Vector6d tau_prev = Vector6d::Zero();   // command applied one tick ago
  Vector6d tau_prev2 = Vector6d::Zero();  // command applied two ticks ago
  wbc::TrackingErrors last_errors;        // privileged errors at the last tick
  bool diverged = false;
  double err_sum = 0.0, foot_sum = 0.0, residual_sum = 0.0;
  int err_n = 0;
  double com_x0 = 0.0, com_x_last = 0.0;

  auto& tr = ep.transitions;
  tr.reserve(static_cast<std::size_t>(t_max));

  for (int k = 0;; ++k) {
    if (diverged) {
      // The plant blew up while executing the previous command; close the
      // trailing transition with the errors seen at its decision time.
      if (!tr.empty()) {
        Transition& last = tr.back();
        last.next_obs = last.obs;
        last.terminal = true;
        last.breakdown = policy::compute_reward(last_errors, last.tau_applied,
                                                tau_prev2, last.tau_star,
                                                ctx.reward, true);
        last.reward = last.breakdown.total;
      }
      ep.metrics.diverged = true;
      break;
    }

    if (k % cmd_ticks == 0 && k < t_max) {
      const double cmd = cmd_rng.uniform(ctx.command_lo, ctx.command_hi);
      base.set_command(cmd);
      oracle.set_command(cmd);
      ep.draws.commands.push_back(cmd);
    }

    const dr::ActuationDraw draw = dr::sample_actuation(ctx.dr, act_rng);
    ep.draws.actuation.push_back(draw);

    const dyn::SimState s_obs =
        (k == 0) ? s0_obs : dr::perturb_state(s, ctx.dr, noise_rng);
    const wbc::WbcOutput base_out = base.tick(s.t, s_obs.q, s_obs.v);
    const wbc::WbcOutput oracle_out = oracle.tick(s.t, s.q, s.v, draw);
    if (base_out.fallback) ++ep.metrics.qp_fallbacks;

    const bool term = policy::check_termination(
        oracle_out.errors.e_xi, ctx.reward.termination_threshold);

    err_sum += oracle_out.errors.e_xi.norm();
    foot_sum += oracle_out.errors.e_foot.norm();
    ep.metrics.max_dcm_error =
        std::max(ep.metrics.max_dcm_error, oracle_out.errors.e_xi.norm());
    ++err_n;
    com_x_last = dyn::com_state(md.model, s).first.x();
    if (k == 0) com_x0 = com_x_last;

    const Eigen::VectorXd o = policy::build_observation(
        s_obs.q, s_obs.v, base_out.tau, tau_prev, base_out.errors.e_xi,
        base_out.errors.e_foot, ctx.scales);

    if (k > 0) {
      Transition& last = tr.back();
      last.next_obs = o;
      last.terminal = term;
      last.breakdown = policy::compute_reward(oracle_out.errors,
                                              last.tau_applied, tau_prev2,
                                              last.tau_star, ctx.reward, term);
      last.reward = last.breakdown.total;
      if (!ctx.same_step_supervision)
        last.sup_target = direct ? Vector6d(oracle_out.tau)
                                 : Vector6d(oracle_out.tau - base_out.tau);
    }
    if (term) {
      ep.metrics.terminated = true;
      break;
    }
    if (k == t_max) {
      const Eigen::VectorXd priv = policy::build_privileged(
          o, s.q, s.v, oracle_out.tau, oracle_out.errors.e_xi,
          oracle_out.errors.e_foot, ctx.scales);
      ep.bootstrap_value = critic.value(priv);
      break;
    }

    Transition t;
    t.obs = o;
    t.priv_obs = policy::build_privileged(o, s.q, s.v, oracle_out.tau,
                                          oracle_out.errors.e_xi,
                                          oracle_out.errors.e_foot, ctx.scales);
    t.value = critic.value(t.priv_obs);
    t.hidden_pre = hidden;
    Vector6d std_dev;
    const Vector6d mean = net.act(o, hidden, &std_dev);
    Vector6d u = mean;
    if (opts.zero_residual) {
      u.setZero();
      t.log_prob = 0.0;
    } else {
      if (!opts.deterministic)
        for (int i = 0; i < policy::kActionDim; ++i)
          u(i) = mean(i) + std_dev(i) * action_rng.normal();
      t.log_prob = gaussian_log_prob(u, mean, std_dev);
    }
    t.action_pre = u;
    t.residual = opts.zero_residual
                     ? Vector6d(Vector6d::Zero())
                     : Vector6d(bound.array() * u.array().tanh());
    t.tau_base = base_out.tau;
    t.tau_star = oracle_out.tau;
    t.tau_applied = direct ? t.residual : Vector6d(base_out.tau + t.residual);
    t.tau_applied = t.tau_applied.cwiseMax(-limits).cwiseMin(limits);
    t.sup_target = direct ? Vector6d(oracle_out.tau)
                          : Vector6d(oracle_out.tau - base_out.tau);
    residual_sum += t.residual.cwiseAbs().mean();
    last_errors = oracle_out.errors;

    dr::apply_actuation(s, t.tau_applied, draw);
    for (int i = 0; i < ctx.sim_substeps; ++i) {
      const dyn::StepInfo info =
          dyn::step(s, md.model, terrain, ctx.contact, ctx.control_dt /
                                                           ctx.sim_substeps);
      if (!info.ok) diverged = true;
    }
    if (!s.q.allFinite() || !s.v.allFinite()) diverged = true;

    tau_prev2 = tau_prev;
    tau_prev = t.tau_applied;
    tr.push_back(std::move(t));
  }

  ep.metrics.steps = static_cast<int>(tr.size());
  ep.metrics.sim_seconds = ep.metrics.steps * ctx.control_dt;
  for (const Transition& x : tr) ep.metrics.total_reward += x.reward;
  ep.metrics.mean_reward =
      tr.empty() ? 0.0 : ep.metrics.total_reward / ep.metrics.steps;
  ep.metrics.mean_dcm_error = err_n ? err_sum / err_n : 0.0;
  ep.metrics.mean_foot_error = err_n ? foot_sum / err_n : 0.0;
  ep.metrics.mean_abs_residual =
      tr.empty() ? 0.0 : residual_sum / ep.metrics.steps;
  ep.metrics.forward_distance = com_x_last - com_x0;
  return ep;
}

}  // namespace dcmwalk::learn
