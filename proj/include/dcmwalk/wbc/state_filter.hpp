#pragma once

#include <cmath>
#include <numbers>

#include "dcmwalk/core/types.hpp"

namespace dcmwalk::wbc {

// First-order low-pass over all measured state channels, used by the
// model-based policies in front of the controller. The first sample
// initializes the state directly to avoid a startup transient.
class StateFilter {
 public:
  explicit StateFilter(double cutoff_hz = 20.0) : cutoff_hz_(cutoff_hz) {}

  void reset() { initialized_ = false; }

  void step(const Vector9d& q_in, const Vector9d& v_in, double dt) {
    if (!initialized_) {
      q_ = q_in;
      v_ = v_in;
      initialized_ = true;
      return;
    }
    const double rc = 1.0 / (2.0 * std::numbers::pi * cutoff_hz_);
    const double a = dt / (dt + rc);
    q_ += a * (q_in - q_);
    v_ += a * (v_in - v_);
  }

  const Vector9d& q() const { return q_; }
  const Vector9d& v() const { return v_; }
  double cutoff_hz() const { return cutoff_hz_; }

 private:
  double cutoff_hz_;
  bool initialized_ = false;
  Vector9d q_ = Vector9d::Zero();
  Vector9d v_ = Vector9d::Zero();
};

}  // namespace dcmwalk::wbc
