#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace rforge::fm {

using SampleVec = std::vector<double>;

// Evaluable velocity v(x, t); conditioning lives in the closure. Output
// dimension must match the input.
using VelocityField = std::function<SampleVec(const SampleVec&, double)>;

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which difference the field regresses. NoiseMinusData is the x1 - x0
// convention of the straight-line interpolant derivative; DataMinusNoise is
// the opposite sign sometimes used for the sampler target.
enum class VelocityConvention { NoiseMinusData, DataMinusNoise };

// Elementwise t*x1 + (1-t)*x0 for t in [0, 1].
SampleVec interpolate(const SampleVec& x0, const SampleVec& x1, double t);

// Elementwise x1 - x0: the derivative of the linear interpolant, constant
// in t.
SampleVec target_velocity(const SampleVec& x0, const SampleVec& x1);

// Squared error ||field(interpolate(x0,x1,t), t) - (x1 - x0)||^2.
double fm_loss(const VelocityField& field, const SampleVec& x0, const SampleVec& x1, double t);

// Explicit Euler from t=1 down to t=0 with dt = 1/steps, starting at x1.
// Under NoiseMinusData each step is x <- x - dt * field(x, t). Exact for
// constant fields. Throws NumericError on non-finite intermediates.
SampleVec euler_sample(const VelocityField& field, const SampleVec& x1, int steps,
                       VelocityConvention convention = VelocityConvention::NoiseMinusData);

}  // namespace rforge::fm
