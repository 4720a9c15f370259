#pragma once

#include <vector>

namespace dcmwalk::learn {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantage + value, critic regression target
};

// Generalized advantage estimation over one episode. values holds T + 1
// entries: the per-step critic values followed by the bootstrap value of the
// final state (ignored when the last step is terminal). terminal[t] marks
// environment termination at step t: the bootstrap is dropped there and the
// recursion restarts. lambda = 0 reduces to the one-step TD advantage
// r + gamma * V(s') - V(s); lambda = 1 to the discounted-return advantage.
// Throws std::invalid_argument on inconsistent lengths.
GaeResult compute_gae(const std::vector<double>& rewards,
                      const std::vector<double>& values,
                      const std::vector<bool>& terminal, double gamma,
                      double lambda);

// Shifts and scales the values in place to zero mean and unit standard
// deviation. Leaves the input untouched when fewer than two samples or when
// the standard deviation underflows.
void normalize_in_place(std::vector<double>& v);

}  // namespace dcmwalk::learn
