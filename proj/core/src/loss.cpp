#include "rdml/loss.hpp"

#include "rdml/errors.hpp"

#include <cmath>

namespace rdml {

RescaledHingeParams make_rescaled_hinge_params(double eta, double C) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InvalidInputError("rescaled hinge: eta must be positive and finite");
    }
    if (!(C > 0.0) || !std::isfinite(C)) {
        throw InvalidInputError("rescaled hinge: C must be positive and finite");
    }
    // 1 - exp(-eta) via expm1 keeps beta accurate for small eta.
    return RescaledHingeParams{eta, 1.0 / -std::expm1(-eta), C};
}

double hinge(double z) { return z < 1.0 ? 1.0 - z : 0.0; }

double rescaled_hinge(double z, const RescaledHingeParams& p) {
    return p.beta * -std::expm1(-p.eta * hinge(z));
}

std::vector<double> hq_weight_update(const TripletMargins& z, double eta) {
    if (!(eta > 0.0)) {
        throw InvalidInputError("hq_weight_update: eta must be positive");
    }
    std::vector<double> v(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = eta * hinge(z[i]);
        // exp(-a) underflows to 0 past a ~ 745; clamp so v stays in [-1, 0).
        v[i] = a > 700.0 ? -1e-300 : -std::exp(-a);
    }
    return v;
}

std::vector<double> triplet_weights(const std::vector<double>& v, const RescaledHingeParams& p) {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] >= -1.0) || !(v[i] < 0.0)) {
            throw InvalidStateError("triplet_weights: auxiliary variable outside [-1, 0)");
        }
        w[i] = p.C * p.beta * p.eta * -v[i];
    }
    return w;
}

double conjugate_g(double v) {
    if (!(v < 0.0)) {
        throw InvalidInputError("conjugate_g: argument must be negative");
    }
    return -v * std::log(-v) + v;
}

} // namespace rdml
