#pragma once

#include <string>

namespace dcmwalk::learn {

// Controller variants used across training and evaluation.
//
//   kBase    deployable model-based controller alone (noisy state, nominal
//            model, low-pass filter)
//   kOracle  privileged model-based controller (true state, true model,
//            inverse-efficiency output)
//   kMBC     base controller re-ticked at the plant rate (1 kHz) instead of
//            the 200 Hz policy rate; no learning
//   kBOR     learned residual on top of the base controller, trained with
//            both the RL objective and oracle supervision
//   kOR      learned direct torque commands (no base term in the action),
//            trained with both objectives
//   kResRL   learned residual trained with the RL objective only
//   kIL      learned residual trained with oracle supervision only
enum class Variant {
  kBase,
  kOracle,
  kMBC,
  kBOR,
  kOR,
  kResRL,
  kIL,
};

// True for variants with a trainable network in the loop.
inline bool is_trained(Variant v) {
  return v == Variant::kBOR || v == Variant::kOR || v == Variant::kResRL ||
         v == Variant::kIL;
}

// True when the network output is the full torque command rather than a
// residual added to the base controller.
inline bool is_direct_torque(Variant v) { return v == Variant::kOR; }

const char* variant_name(Variant v);

// Parses "base", "oracle", "mbc", "bor", "or", "resrl", "il" (case
// sensitive). Throws std::invalid_argument on anything else.
Variant parse_variant(const std::string& name);

}  // namespace dcmwalk::learn
