#include "dcmwalk/learn/trainer.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dcmwalk::learn {

namespace fs = std::filesystem;

namespace {

// Seed-stream roles; keeps episode, evaluation and shuffle draws decoupled.
constexpr std::uint64_t kEpisodeStream = 0x200000;
constexpr std::uint64_t kEvalStream = 0x400000;
constexpr std::uint64_t kShuffleStream = 0x600000;
constexpr std::uint64_t kNetStream = 0x800000;

nn::Adam make_adam(std::vector<nn::Param*> params, double lr) {
  nn::AdamConfig ac;
  ac.lr = lr;
  return nn::Adam(std::move(params), ac);
}

}  // namespace

Trainer::Trainer(Variant v, const RolloutContext& ctx, const TrainConfig& cfg,
                 const nn::PolicyNetConfig& actor_cfg,
                 const nn::CriticNetConfig& critic_cfg, std::string run_dir,
                 std::string config_snapshot, bool resume)
    : variant_(v),
      ctx_(ctx),
      cfg_(cfg),
      net_([&] {
        Rng rng = Rng(cfg.seed).split(kNetStream);
        return nn::PolicyNet(actor_cfg, rng);
      }()),
      critic_([&] {
        Rng rng = Rng(cfg.seed).split(kNetStream + 1);
        return nn::CriticNet(critic_cfg, rng);
      }()),
      actor_opt_(make_adam(net_.params(), cfg.lr_actor)),
      critic_opt_(make_adam(critic_.params(), cfg.lr_critic)),
      run_dir_(std::move(run_dir)),
      config_snapshot_(std::move(config_snapshot)) {
  if (!is_trained(v))
    throw std::invalid_argument("trainer: variant has no trainable network");
  ctx_.validate();
  cfg_.validate();
  if (!run_dir_.empty()) {
    fs::create_directories(run_dir_);
    if (!resume) {
      fs::remove(path("training_log.jsonl"));
      fs::remove(path("eval_curve.csv"));
      fs::remove(path("episodes.jsonl"));
    }
    write_meta();
  }
}

std::string Trainer::path(const std::string& name) const {
  return (fs::path(run_dir_) / name).string();
}

std::uint64_t Trainer::episode_seed(int index) const {
  return Rng(cfg_.seed).split(kEpisodeStream + static_cast<std::uint64_t>(index))
      .root_seed();
}

std::uint64_t Trainer::eval_seed(int index) const {
  return Rng(cfg_.seed).split(kEvalStream + static_cast<std::uint64_t>(index))
      .root_seed();
}

std::uint64_t Trainer::checkpoint_hash() const {
  std::ostringstream d;
  const auto& a = net_.config();
  const auto& c = critic_.config();
  d << "trainer|" << variant_name(variant_) << "|actor:" << a.input_dim << ","
    << a.action_dim << "," << a.rnn_layers << "," << a.rnn_hidden << ","
    << a.head_hidden << "|critic:" << c.input_dim;
  for (int h : c.hidden) d << "," << h;
  d << "|seed:" << cfg_.seed;
  return nn::descriptor_hash(d.str());
}

void Trainer::write_meta() {
  nlohmann::json j;
  j["variant"] = variant_name(variant_);
  j["seed"] = cfg_.seed;
  j["beta"] = ctx_.dr.beta;
  j["episodes"] = cfg_.episodes;
  j["actor_params"] = net_.param_count();
  j["critic_params"] = critic_.param_count();
  j["checkpoint_hash"] = checkpoint_hash();
  std::ofstream f(path("run_meta.json"), std::ios::trunc);
  f << j.dump(2) << "\n";
  if (!config_snapshot_.empty()) {
    std::ofstream c(path("config.cfg"), std::ios::trunc);
    c << config_snapshot_;
  }
}

void Trainer::log_update(const UpdateDiagnostics& diag,
                         const std::vector<EpisodeResult>& buffer) {
  if (run_dir_.empty()) return;
  nlohmann::json j;
  j["update"] = updates_;
  j["episode"] = episode_;
  j["l_rl"] = diag.l_rl;
  j["surrogate"] = diag.surrogate;
  j["l_sup"] = diag.l_sup;
  j["l_critic"] = diag.l_critic;
  j["total"] = diag.total;
  j["entropy"] = diag.entropy;
  j["clip_fraction"] = diag.clip_fraction;
  j["grad_norm_actor"] = diag.grad_norm_actor;
  j["grad_norm_critic"] = diag.grad_norm_critic;
  j["skipped_minibatches"] = diag.skipped;
  j["transitions"] = diag.transitions;
  double reward = 0.0, dcm = 0.0, steps = 0.0;
  int success = 0;
  for (const EpisodeResult& ep : buffer) {
    reward += ep.metrics.total_reward;
    dcm += ep.metrics.mean_dcm_error;
    steps += ep.metrics.steps;
    success += ep.metrics.success() ? 1 : 0;
  }
  const double n = std::max<std::size_t>(1, buffer.size());
  j["mean_episode_reward"] = reward / n;
  j["mean_dcm_error"] = dcm / n;
  j["mean_steps"] = steps / n;
  j["train_success"] = success / n;
  std::ofstream f(path("training_log.jsonl"), std::ios::app);
  f << j.dump() << "\n";

  std::ofstream d(path("episodes.jsonl"), std::ios::app);
  for (const EpisodeResult& ep : buffer) d << ep.draws.to_json_line() << "\n";
}

void Trainer::log_eval(const EvalSnapshot& snap) {
  if (run_dir_.empty()) return;
  const std::string p = path("eval_curve.csv");
  const bool fresh = !fs::exists(p);
  std::ofstream f(p, std::ios::app);
  f.precision(17);
  if (fresh)
    f << "episode,success_rate,mean_dcm_error,mean_dcm_error_all,"
         "mean_reward,mean_distance\n";
  f << snap.episode << "," << snap.stats.success_rate << ","
    << snap.stats.mean_dcm_error << "," << snap.stats.mean_dcm_error_all << ","
    << snap.stats.mean_reward << "," << snap.stats.mean_distance << "\n";
}

UpdateDiagnostics Trainer::step_once() {
  std::vector<EpisodeResult> buffer;
  buffer.reserve(static_cast<std::size_t>(cfg_.episodes_per_update));
  for (int i = 0; i < cfg_.episodes_per_update; ++i) {
    buffer.push_back(collect_episode(variant_, ctx_, net_, critic_,
                                     episode_seed(episode_)));
    ++episode_;
  }
  Rng shuffle = Rng(cfg_.seed).split(kShuffleStream +
                                     static_cast<std::uint64_t>(updates_));
  const UpdateDiagnostics diag =
      update(variant_, net_, critic_, actor_opt_, critic_opt_, buffer, bound(),
             cfg_, shuffle);
  ++updates_;
  log_update(diag, buffer);
  return diag;
}

EvalStats Trainer::evaluate(int episodes, double seconds,
                            std::uint64_t seed_base) {
  RolloutContext ectx = ctx_;
  ectx.episode_seconds = seconds;
  RolloutOptions opts;
  opts.deterministic = true;
  EvalStats stats;
  stats.episodes = episodes;
  int successes = 0;
  double dcm_success = 0.0;
  for (int i = 0; i < episodes; ++i) {
    const EpisodeResult ep = collect_episode(
        variant_, ectx, net_, critic_, seed_base + static_cast<std::uint64_t>(i),
        opts);
    stats.mean_dcm_error_all += ep.metrics.mean_dcm_error / episodes;
    stats.mean_reward += ep.metrics.total_reward / episodes;
    stats.mean_distance += ep.metrics.forward_distance / episodes;
    if (ep.metrics.success()) {
      ++successes;
      dcm_success += ep.metrics.mean_dcm_error;
    }
  }
  stats.success_rate = 100.0 * successes / episodes;
  stats.mean_dcm_error = successes ? dcm_success / successes : 0.0;
  return stats;
}

EvalStats Trainer::evaluate() {
  return evaluate(cfg_.eval_episodes, cfg_.eval_seconds, eval_seed(0));
}

TrainResult Trainer::run() {
  TrainResult res;
  bool stop = false;
  while (episode_ < cfg_.episodes && !stop) {
    step_once();
    const bool snapshot_due =
        episode_ % cfg_.eval_interval == 0 || episode_ >= cfg_.episodes;
    if (!snapshot_due) continue;

    EvalSnapshot snap;
    snap.episode = episode_;
    snap.stats = evaluate();
    res.curve.push_back(snap);
    log_eval(snap);
    res.final_eval = snap.stats;

    const bool improved =
        snap.stats.success_rate > best_success_ ||
        (snap.stats.success_rate == best_success_ &&
         snap.stats.mean_dcm_error < best_dcm_);
    if (improved) {
      best_success_ = snap.stats.success_rate;
      best_dcm_ = snap.stats.mean_dcm_error;
      res.best_eval = snap.stats;
      if (!run_dir_.empty()) save_checkpoint_file(path("checkpoint_best.bin"));
    }
    if (!run_dir_.empty()) save_checkpoint_file(path("checkpoint_latest.bin"));

    if (snap.stats.success_rate >= 100.0 * cfg_.stop_success)
      ++stop_streak_;
    else
      stop_streak_ = 0;
    if (cfg_.early_stop && stop_streak_ >= cfg_.stop_patience) stop = true;
  }
  res.episodes_run = episode_;
  res.updates_run = updates_;
  res.stopped_early = stop;
  return res;
}

void Trainer::save_checkpoint_file(const std::string& file) {
  std::vector<nn::Param*> params = net_.params();
  for (nn::Param* p : critic_.params()) params.push_back(p);
  std::vector<const Eigen::MatrixXd*> extra;
  for (const auto& m : actor_opt_.first_moments()) extra.push_back(&m);
  for (const auto& m : actor_opt_.second_moments()) extra.push_back(&m);
  for (const auto& m : critic_opt_.first_moments()) extra.push_back(&m);
  for (const auto& m : critic_opt_.second_moments()) extra.push_back(&m);
  Eigen::MatrixXd counters(1, 7);
  counters << episode_, updates_, actor_opt_.steps_taken(),
      critic_opt_.steps_taken(), stop_streak_, best_success_, best_dcm_;
  extra.push_back(&counters);
  nn::save_checkpoint(file, checkpoint_hash(), params, extra);
}

void Trainer::load_checkpoint_file(const std::string& file) {
  std::vector<nn::Param*> params = net_.params();
  for (nn::Param* p : critic_.params()) params.push_back(p);
  std::vector<Eigen::MatrixXd*> extra;
  for (auto& m : actor_opt_.first_moments()) extra.push_back(&m);
  for (auto& m : actor_opt_.second_moments()) extra.push_back(&m);
  for (auto& m : critic_opt_.first_moments()) extra.push_back(&m);
  for (auto& m : critic_opt_.second_moments()) extra.push_back(&m);
  Eigen::MatrixXd counters(1, 7);
  extra.push_back(&counters);
  nn::load_checkpoint(file, checkpoint_hash(), params, extra);
  episode_ = static_cast<int>(counters(0, 0));
  updates_ = static_cast<int>(counters(0, 1));
  actor_opt_.set_steps_taken(static_cast<int>(counters(0, 2)));
  critic_opt_.set_steps_taken(static_cast<int>(counters(0, 3)));
  stop_streak_ = static_cast<int>(counters(0, 4));
  best_success_ = counters(0, 5);
  best_dcm_ = counters(0, 6);
}

}  // namespace dcmwalk::learn
