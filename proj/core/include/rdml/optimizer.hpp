#pragma once

#include "rdml/dataset.hpp"
#include "rdml/loss.hpp"
#include "rdml/metric.hpp"
#include "rdml/triplets.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace rdml {

struct OptimizerConfig {
    double lambda = 1e-3; // learning rate, in (0, 1)
    double C = 1.0; // loss/regularizer trade-off
    double eta = 1.0; // rescaling factor of the robust loss
    int max_hq_iters = 3;
    int max_inner_epochs = 200;
    int batch_size = 0; // 0: auto (full when |T| <= 5000, else 512); -1: full
    double inner_tol = 1e-4; // relative objective change per epoch
    std::uint64_t seed = 0;
};

/// Throws InvalidInputError on out-of-domain fields.
void validate_config(const OptimizerConfig& cfg);

/// Resolves the batch-size policy for a triplet count.
int resolve_batch_size(const OptimizerConfig& cfg, std::size_t n_triplets);

struct HQState {
    Metric M;
    std::vector<double> v; // one auxiliary variable per triplet, in [-1, 0)
    int hq_iter = 0;
    std::vector<double> objective_trace; // regularized robust objective per iteration
};

struct TrainReport {
    explicit TrainReport(Metric m) : metric(std::move(m)) {}

    Metric metric;
    std::vector<double> objective_trace; // initial value, then one per HQ iteration
    std::vector<double> f3_trace; // augmented objective after each v-update
    std::vector<double> final_weights; // per-triplet C_i from the last v-update
    std::vector<std::vector<double>> anchor_weights; // per HQ iteration: normalized
                                                     // per-instance anchor weights
    std::vector<int> active_counts; // active triplets after each HQ iteration
    double wall_seconds = 0.0;
};

/// z_i = d_M^2(x_i, x_i^-) - d_M^2(x_i, x_i^+) for every triplet.
TripletMargins compute_margins(const Metric& m, const TripletSet& ts, const Dataset& ds);

/// 0.5 ||M||_F^2 + C * sum_i rescaled_hinge(z_i).
double objective_rescaled(const Metric& m, const TripletSet& ts, const Dataset& ds,
                          const RescaledHingeParams& p);

/// 0.5 ||M||_F^2 + sum_i w_i * hinge(z_i): the weighted sub-problem the inner
/// solver minimizes.
double weighted_hinge_objective(const Metric& m, const TripletSet& ts, const Dataset& ds,
                                const std::vector<double>& weights);

/// The augmented objective maximized by the alternating scheme:
/// -0.5 ||M||_F^2 + C * beta * sum_i (eta * hinge(z_i) * v_i - g(v_i)).
double hq_augmented_objective(const Metric& m, const TripletMargins& z,
                              const std::vector<double>& v, const RescaledHingeParams& p);

/// Subgradient of the weighted sub-problem over a batch:
/// M + (|T|/|batch|) * sum over active i of
///   C_i * [(x_i - x_i+)(x_i - x_i+)^T - (x_i - x_i-)(x_i - x_i-)^T],
/// where a triplet is active when 1 + d^2(x,x+) - d^2(x,x-) > 0.
Matrix inner_gradient(const Metric& m, const TripletSet& ts, const Dataset& ds,
                      const std::vector<double>& weights, std::span<const int> batch);

/// Runs subgradient epochs M <- M - lambda * gradient (re-symmetrizing every
/// update) until the relative objective change over one epoch drops below
/// inner_tol or max_inner_epochs is reached, then projects onto the PSD cone.
/// Weights stay fixed for the whole call. Throws DivergenceError when the
/// objective becomes non-finite. `salt` decorrelates batch shuffling across
/// outer iterations.
Metric inner_solve(const Metric& m0, const TripletSet& ts, const Dataset& ds,
                   const std::vector<double>& weights, const OptimizerConfig& cfg,
                   std::uint64_t salt = 0);

/// The full alternating scheme: M starts at identity, v at -1; each outer
/// iteration applies the closed-form v-update, derives per-triplet weights,
/// and re-solves the weighted sub-problem. When `verbose` is set, one
/// progress line per outer iteration (iteration, objective, active count)
/// is written to it.
TrainReport train_rdml(const Dataset& ds, const TripletSet& ts, const OptimizerConfig& cfg,
                       std::ostream* verbose = nullptr);

/// Non-robust comparator: a single inner solve with uniform weights C_i = C.
TrainReport train_baseline_hinge(const Dataset& ds, const TripletSet& ts,
                                 const OptimizerConfig& cfg, std::ostream* verbose = nullptr);

} // namespace rdml
