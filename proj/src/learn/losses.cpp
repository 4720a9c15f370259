#include "dcmwalk/learn/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace dcmwalk::learn {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;  // log(2*pi)
// Saturated targets clamp to 99.5% of the bound before atanh. A tighter
// margin maps them to pre-squash magnitudes of 7+, and those outliers swamp
// the supervision gradient; at 0.995 they land near 3, which a unit-scale
// Gaussian head can actually chase.
constexpr double kTanhMargin = 0.995;
}  // namespace

Vector6d presquash_target(const Vector6d& torque, const Vector6d& bound) {
  Vector6d u;
  for (int i = 0; i < 6; ++i) {
    double r = torque(i) / bound(i);
    r = std::min(kTanhMargin, std::max(-kTanhMargin, r));
    u(i) = std::atanh(r);
  }
  return u;
}

double gaussian_log_prob(const Vector6d& u, const Vector6d& mean,
                         const Vector6d& stddev) {
  double lp = -0.5 * 6 * kLog2Pi;
  for (int i = 0; i < 6; ++i) {
    const double z = (u(i) - mean(i)) / stddev(i);
    lp += -0.5 * z * z - std::log(stddev(i));
  }
  return lp;
}

double gaussian_entropy(const Vector6d& stddev) {
  double h = 0.5 * 6 * (kLog2Pi + 1.0);
  for (int i = 0; i < 6; ++i) h += std::log(stddev(i));
  return h;
}

std::vector<Chunk> make_chunks(const std::vector<EpisodeResult>& buffer,
                               int chunk_len) {
  if (chunk_len <= 0) throw std::invalid_argument("chunks: length must be positive");
  std::vector<Chunk> chunks;
  for (const EpisodeResult& ep : buffer) {
    const int n = static_cast<int>(ep.transitions.size());
    for (int begin = 0; begin < n; begin += chunk_len)
      chunks.push_back({&ep, begin, std::min(chunk_len, n - begin)});
  }
  return chunks;
}

ActorChunkLoss build_actor_chunk_loss(nn::Graph& g, const nn::PolicyNet& net,
                                      const Chunk& chunk,
                                      const Vector6d& bound, double clip_eps) {
  if (!chunk.ep || chunk.len <= 0)
    throw std::invalid_argument("actor loss: empty chunk");
  const auto& tr = chunk.ep->transitions;

  const Transition& first = tr[chunk.begin];
  std::vector<nn::Var> hidden;
  hidden.reserve(first.hidden_pre.size());
  for (const Eigen::VectorXd& h : first.hidden_pre)
    hidden.push_back(g.constant(h));

  const nn::Var log_std = net.log_std_var(g);
  const nn::Var stddev = g.exp_op(log_std);
  const nn::Var sum_log_std = g.sum(log_std);

  ActorChunkLoss out;
  out.steps = chunk.len;
  nn::Var surr_acc, nll_acc;
  bool have_acc = false;

  for (int i = 0; i < chunk.len; ++i) {
    const Transition& t = tr[chunk.begin + i];
    const nn::Var x = g.constant(t.obs);
    const nn::Var mean = net.forward(g, x, hidden);

    // Importance ratio of the stored pre-squash action.
    const nn::Var du = g.cdiv(g.sub(g.constant(t.action_pre), mean), stddev);
    const nn::Var logp = g.add_scalar(
        g.sub(g.scale(g.sum(g.square(du)), -0.5), sum_log_std), -3.0 * kLog2Pi);
    const nn::Var ratio = g.exp_op(g.add_scalar(logp, -t.log_prob));
    const nn::Var full = g.scale(ratio, t.advantage);
    const nn::Var clipped =
        g.scale(g.clamp(ratio, 1.0 - clip_eps, 1.0 + clip_eps), t.advantage);
    const nn::Var step_obj = g.minimum(full, clipped);
    surr_acc = have_acc ? g.add(surr_acc, step_obj) : step_obj;

    // Supervision likelihood of the oracle correction's pre-image.
    const nn::Var dz = g.cdiv(
        g.sub(g.constant(presquash_target(t.sup_target, bound)), mean), stddev);
    const nn::Var nll_t = g.add_scalar(
        g.add(g.scale(g.sum(g.square(dz)), 0.5), sum_log_std), 3.0 * kLog2Pi);
    nll_acc = have_acc ? g.add(nll_acc, nll_t) : nll_t;
    have_acc = true;

    const double r = g.scalar(ratio);
    out.mean_ratio += r / chunk.len;
    if (r < 1.0 - clip_eps || r > 1.0 + clip_eps)
      out.clip_fraction += 1.0 / chunk.len;
  }

  out.surrogate = g.scale(surr_acc, -1.0 / chunk.len);
  out.nll = g.scale(nll_acc, 1.0 / chunk.len);
  out.entropy = g.add_scalar(sum_log_std, 0.5 * 6 * (kLog2Pi + 1.0));
  return out;
}

double supervised_loss(const std::vector<Chunk>& chunks,
                       const nn::PolicyNet& net, const Vector6d& bound) {
  double acc = 0.0;
  int steps = 0;
  for (const Chunk& c : chunks) {
    nn::Graph g;
    const ActorChunkLoss l = build_actor_chunk_loss(g, net, c, bound, 0.2);
    acc += g.scalar(l.nll) * c.len;
    steps += c.len;
  }
  if (steps == 0) throw std::invalid_argument("supervised loss: empty batch");
  return acc / steps;
}

PpoLossValue ppo_loss(const std::vector<Chunk>& chunks,
                      const nn::PolicyNet& net, const nn::CriticNet& critic,
                      double clip_eps, double entropy_coef) {
  if (chunks.empty()) throw std::invalid_argument("ppo loss: empty batch");
  PpoLossValue out;
  int steps = 0;
  for (const Chunk& c : chunks) {
    nn::Graph g;
    const ActorChunkLoss l = build_actor_chunk_loss(g, net, c, Vector6d::Ones(),
                                                    clip_eps);
    out.surrogate += g.scalar(l.surrogate) * c.len;
    out.entropy = g.scalar(l.entropy);
    steps += c.len;
    for (int i = 0; i < c.len; ++i) {
      const Transition& t = c.ep->transitions[c.begin + i];
      const double err = critic.value(t.priv_obs) - t.ret;
      out.critic_mse += err * err;
    }
  }
  out.surrogate /= steps;
  out.critic_mse /= steps;
  out.actor_total = out.surrogate - entropy_coef * out.entropy;
  return out;
}

}  // namespace dcmwalk::learn
