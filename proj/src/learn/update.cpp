#include "dcmwalk/learn/update.hpp"

#include <algorithm>
#include <cmath>

#include "dcmwalk/learn/gae.hpp"

namespace dcmwalk::learn {

void prepare_advantages(std::vector<EpisodeResult>& buffer,
                        const TrainConfig& cfg) {
  for (EpisodeResult& ep : buffer) {
    const std::size_t n = ep.transitions.size();
    if (n == 0) continue;
    std::vector<double> rewards(n), values(n + 1);
    std::vector<bool> terminal(n);
    for (std::size_t i = 0; i < n; ++i) {
      rewards[i] = ep.transitions[i].reward;
      values[i] = ep.transitions[i].value;
      terminal[i] = ep.transitions[i].terminal;
    }
    values[n] = ep.bootstrap_value;
    const GaeResult gae =
        compute_gae(rewards, values, terminal, cfg.gamma, cfg.gae_lambda);
    for (std::size_t i = 0; i < n; ++i) {
      ep.transitions[i].advantage = gae.advantages[i];
      ep.transitions[i].ret = gae.returns[i];
    }
  }
  if (!cfg.normalize_advantages) return;
  std::vector<double> all;
  for (const EpisodeResult& ep : buffer)
    for (const Transition& t : ep.transitions) all.push_back(t.advantage);
  normalize_in_place(all);
  std::size_t k = 0;
  for (EpisodeResult& ep : buffer)
    for (Transition& t : ep.transitions) t.advantage = all[k++];
}

namespace {

// Stable minibatch critic graph: privileged observations as columns,
// squared-error mean against the GAE returns.
double critic_minibatch(const nn::CriticNet& critic, nn::Adam& critic_opt,
                        const std::vector<const Transition*>& steps,
                        double grad_clip, double* grad_norm) {
  nn::Graph g;
  const int n = static_cast<int>(steps.size());
  Eigen::MatrixXd x(steps[0]->priv_obs.size(), n);
  Eigen::MatrixXd target(1, n);
  for (int i = 0; i < n; ++i) {
    x.col(i) = steps[i]->priv_obs;
    target(0, i) = steps[i]->ret;
  }
  const nn::Var pred = critic.forward(g, g.constant(x));
  const nn::Var loss = g.mean(g.square(g.sub(pred, g.constant(target))));
  const double value = g.scalar(loss);
  if (!std::isfinite(value)) return value;
  critic_opt.zero_grad();
  g.backward(loss);
  *grad_norm = critic_opt.clip_grad_norm(grad_clip);
  critic_opt.step();
  return value;
}

}  // namespace

UpdateDiagnostics update(Variant v, const nn::PolicyNet& net,
                         const nn::CriticNet& critic, nn::Adam& actor_opt,
                         nn::Adam& critic_opt,
                         std::vector<EpisodeResult>& buffer,
                         const Vector6d& bound, const TrainConfig& cfg,
                         Rng& shuffle_rng) {
  UpdateDiagnostics diag;
  const double w_rl = cfg.effective_w_rl(v);
  const double w_sup = cfg.effective_w_sup(v);
  for (const EpisodeResult& ep : buffer)
    diag.transitions += static_cast<int>(ep.transitions.size());
  if ((w_rl == 0.0 && w_sup == 0.0) || diag.transitions == 0) return diag;

  prepare_advantages(buffer, cfg);
  {
    double sum = 0.0, sq = 0.0;
    for (const EpisodeResult& ep : buffer)
      for (const Transition& t : ep.transitions) {
        sum += t.advantage;
        sq += t.advantage * t.advantage;
      }
    diag.adv_mean = sum / diag.transitions;
    diag.adv_std =
        std::sqrt(std::max(0.0, sq / diag.transitions -
                                    diag.adv_mean * diag.adv_mean));
  }

  std::vector<Chunk> chunks = make_chunks(buffer, cfg.chunk_len);
  const int per_mb =
      std::max(1, cfg.minibatch_timesteps / std::max(1, cfg.chunk_len));

  double weight_sum = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Fisher-Yates pass over the chunk order.
    for (int i = static_cast<int>(chunks.size()) - 1; i > 0; --i)
      std::swap(chunks[i], chunks[shuffle_rng.uniform_int(0, i)]);

    for (std::size_t start = 0; start < chunks.size();
         start += static_cast<std::size_t>(per_mb)) {
      const std::size_t end =
          std::min(chunks.size(), start + static_cast<std::size_t>(per_mb));
      int mb_steps = 0;
      for (std::size_t c = start; c < end; ++c) mb_steps += chunks[c].len;
      if (mb_steps == 0) continue;

      actor_opt.zero_grad();
      double mb_surr = 0.0, mb_nll = 0.0, mb_entropy = 0.0, mb_clip = 0.0;
      bool finite = true;
      for (std::size_t c = start; c < end && finite; ++c) {
        nn::Graph g;
        const ActorChunkLoss l =
            build_actor_chunk_loss(g, net, chunks[c], bound, cfg.clip_eps);
        const nn::Var rl_term =
            g.sub(l.surrogate, g.scale(l.entropy, cfg.entropy_coef));
        const nn::Var total = g.scale(
            g.add(g.scale(rl_term, w_rl), g.scale(l.nll, w_sup)),
            static_cast<double>(l.steps) / mb_steps);
        if (!std::isfinite(g.scalar(total))) {
          finite = false;
          break;
        }
        g.backward(total);
        const double wc = static_cast<double>(l.steps) / mb_steps;
        mb_surr += g.scalar(l.surrogate) * wc;
        mb_nll += g.scalar(l.nll) * wc;
        mb_entropy = g.scalar(l.entropy);
        mb_clip += l.clip_fraction * wc;
      }
      if (!finite) {
        actor_opt.zero_grad();
        ++diag.skipped;
        continue;
      }
      diag.grad_norm_actor += actor_opt.clip_grad_norm(cfg.grad_clip);
      actor_opt.step();

      double critic_loss = 0.0, critic_norm = 0.0;
      if (w_rl > 0.0) {
        std::vector<const Transition*> steps;
        steps.reserve(static_cast<std::size_t>(mb_steps));
        for (std::size_t c = start; c < end; ++c)
          for (int i = 0; i < chunks[c].len; ++i)
            steps.push_back(&chunks[c].ep->transitions[chunks[c].begin + i]);
        critic_loss = critic_minibatch(critic, critic_opt, steps,
                                       cfg.grad_clip, &critic_norm);
        if (!std::isfinite(critic_loss)) {
          ++diag.skipped;
          critic_loss = 0.0;
        }
      }

      const double w = mb_steps;
      diag.surrogate += mb_surr * w;
      diag.l_sup += mb_nll * w;
      diag.entropy = mb_entropy;
      diag.clip_fraction += mb_clip * w;
      diag.l_critic += critic_loss * w;
      diag.grad_norm_critic += critic_norm;
      weight_sum += w;
      ++diag.minibatches;
    }
  }

  if (weight_sum > 0.0) {
    diag.surrogate /= weight_sum;
    diag.l_sup /= weight_sum;
    diag.clip_fraction /= weight_sum;
    diag.l_critic /= weight_sum;
  }
  if (diag.minibatches > 0) {
    diag.grad_norm_actor /= diag.minibatches;
    diag.grad_norm_critic /= diag.minibatches;
  }
  diag.l_rl = diag.surrogate - cfg.entropy_coef * diag.entropy;
  diag.total = w_rl * diag.l_rl + w_sup * diag.l_sup;
  return diag;
}

}  // namespace dcmwalk::learn
