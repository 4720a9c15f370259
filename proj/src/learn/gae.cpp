#include "dcmwalk/learn/gae.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace dcmwalk::learn {

GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<bool>& terminal, double gamma,
                      double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n + 1)
    throw std::invalid_argument("gae: values must have T + 1 entries");
  if (terminal.size() != n)
    throw std::invalid_argument("gae: terminal flags must have T entries");

  GaeResult out;
  out.advantages.resize(n);
  out.returns.resize(n);
  double gae = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double next_value = terminal[i] ? 0.0 : values[i + 1];
    const double delta = rewards[i] + gamma * next_value - values[i];
    gae = terminal[i] ? delta : delta + gamma * lambda * gae;
    out.advantages[i] = gae;
    out.returns[i] = gae + values[i];
  }
  return out;
}

void normalize_in_place(std::vector<double>& v) {
  if (v.size() < 2) return;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  const double sd = std::sqrt(var);
  if (sd < 1e-12) return;
  for (double& x : v) x = (x - mean) / sd;
}

}  // namespace dcmwalk::learn
