#include "rforge/flowmatch.hpp"

#include <cmath>

namespace rforge::fm {

namespace {

void require_same_dim(const SampleVec& a, const SampleVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sample dimensions differ");
  if (a.empty()) throw std::invalid_argument("samples must have dim >= 1");
}

}  // namespace

SampleVec interpolate(const SampleVec& x0, const SampleVec& x1, double t) {
  require_same_dim(x0, x1);
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("t must be in [0, 1]");
  SampleVec out(x0.size());
  for (size_t i = 0; i < x0.size(); ++i) out[i] = t * x1[i] + (1.0 - t) * x0[i];
  return out;
}

SampleVec target_velocity(const SampleVec& x0, const SampleVec& x1) {
  require_same_dim(x0, x1);
  SampleVec out(x0.size());
  for (size_t i = 0; i < x0.size(); ++i) out[i] = x1[i] - x0[i];
  return out;
}

double fm_loss(const VelocityField& field, const SampleVec& x0, const SampleVec& x1, double t) {
  const SampleVec xt = interpolate(x0, x1, t);
  const SampleVec predicted = field(xt, t);
  if (predicted.size() != x0.size()) {
    throw std::invalid_argument("field output dimension differs from input");
  }
  const SampleVec target = target_velocity(x0, x1);
  double loss = 0.0;
  for (size_t i = 0; i < target.size(); ++i) {
    const double e = predicted[i] - target[i];
    loss += e * e;
  }
  return loss;
}

SampleVec euler_sample(const VelocityField& field, const SampleVec& x1, int steps,
                       VelocityConvention convention) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (x1.empty()) throw std::invalid_argument("samples must have dim >= 1");

  const double dt = 1.0 / steps;
  const double sign = convention == VelocityConvention::NoiseMinusData ? -1.0 : 1.0;
  SampleVec x = x1;
  for (int k = 0; k < steps; ++k) {
    const double t = 1.0 - k * dt;
    const SampleVec v = field(x, t);
    if (v.size() != x.size()) {
      throw std::invalid_argument("field output dimension differs from input");
    }
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] += sign * dt * v[i];
      if (!std::isfinite(x[i])) throw NumericError("non-finite state during integration");
    }
  }
  return x;
}

}  // namespace rforge::fm
