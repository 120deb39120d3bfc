#pragma once

#include <vector>

namespace rdml {

/// Parameters of the rescaled hinge loss beta * (1 - exp(-eta * hinge(z))).
/// beta = 1 / (1 - exp(-eta)) normalizes the loss so that it equals 1 at
/// z = 0, like the plain hinge. C is the global loss/regularizer trade-off.
struct RescaledHingeParams {
    double eta;
    double beta;
    double C;
};

/// Throws InvalidInputError unless eta > 0 and C > 0.
RescaledHingeParams make_rescaled_hinge_params(double eta, double C);

/// Per-triplet margins z_i = d_M^2(x_i, x_i^-) - d_M^2(x_i, x_i^+).
using TripletMargins = std::vector<double>;

/// max(0, 1 - z). The unit margin is fixed.
double hinge(double z);

/// beta * (1 - exp(-eta * hinge(z))); bounded above by beta, equals 1 at 0.
double rescaled_hinge(double z, const RescaledHingeParams& p);

/// Closed-form auxiliary update v_i = -exp(-eta * hinge(z_i)).
/// Each v_i lies in [-1, 0); underflow is clamped to -1e-300 so that the
/// per-triplet weight never collapses to exactly zero.
std::vector<double> hq_weight_update(const TripletMargins& z, double eta);

/// Per-triplet weights C_i = C * beta * eta * (-v_i), each in (0, C*beta*eta].
/// Throws InvalidStateError if some v_i is outside [-1, 0).
std::vector<double> triplet_weights(const std::vector<double>& v, const RescaledHingeParams& p);

/// Conjugate g(v) = -v log(-v) + v for v < 0; throws InvalidInputError for v >= 0.
double conjugate_g(double v);

} // namespace rdml
