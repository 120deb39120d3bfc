#include "rdml/optimizer.hpp"

#include "rdml/errors.hpp"
#include "rdml/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <ostream>

namespace rdml {

namespace {

void check_triplets(const TripletSet& ts, const Dataset& ds) {
    const int n = ds.n();
    for (const auto& t : ts.triplets) {
        if (t.anchor < 0 || t.anchor >= n || t.positive < 0 || t.positive >= n ||
            t.negative < 0 || t.negative >= n) {
            throw InvalidInputError("triplet index out of range for dataset");
        }
        if (t.anchor == t.positive) {
            throw InvalidInputError("triplet anchor equals its positive");
        }
        if (ds.y[static_cast<std::size_t>(t.anchor)] !=
            ds.y[static_cast<std::size_t>(t.positive)]) {
            throw InvalidInputError("triplet anchor/positive labels differ");
        }
        if (ds.y[static_cast<std::size_t>(t.anchor)] ==
            ds.y[static_cast<std::size_t>(t.negative)]) {
            throw InvalidInputError("triplet anchor/negative labels agree");
        }
    }
}

// Margins and subgradients can be evaluated per triplet or through the n x n
// Gram matrix X M X^T; the latter wins when many triplets share few points.
bool use_gram(int n, int d, std::size_t batch) {
    if (n > 2048) return false; // n^2 buffer guard
    const double gram = static_cast<double>(n) * n * d + static_cast<double>(n) * d * d;
    const double naive = 2.0 * static_cast<double>(batch) * d * d;
    return gram < naive;
}

std::vector<double> margins_impl(const Matrix& m, const TripletSet& ts, const Dataset& ds,
                                 std::span<const int> idx) {
    const int n = ds.n();
    const int d = ds.dim();
    std::vector<double> z(idx.size());
    if (use_gram(n, d, idx.size())) {
        const Matrix q = ds.X * m * ds.X.transpose();
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const auto& tr = ts.triplets[static_cast<std::size_t>(idx[t])];
            z[t] = q(tr.negative, tr.negative) - q(tr.positive, tr.positive) -
                   2.0 * q(tr.anchor, tr.negative) + 2.0 * q(tr.anchor, tr.positive);
        }
    } else {
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const auto& tr = ts.triplets[static_cast<std::size_t>(idx[t])];
            const Vector dn = (ds.X.row(tr.anchor) - ds.X.row(tr.negative)).transpose();
            const Vector dp = (ds.X.row(tr.anchor) - ds.X.row(tr.positive)).transpose();
            z[t] = dn.dot(m * dn) - dp.dot(m * dp);
        }
    }
    return z;
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

// Adds scale * sum over active batch triplets of
// C_i * [(x_a - x_p)(x_a - x_p)^T - (x_a - x_n)(x_a - x_n)^T] to grad.
void add_hinge_subgradient(Matrix& grad, const TripletSet& ts, const Dataset& ds,
                           const std::vector<double>& weights, std::span<const int> batch,
                           const std::vector<double>& z, double scale) {
    const int n = ds.n();
    const int d = ds.dim();
    if (use_gram(n, d, batch.size())) {
        Matrix s = Matrix::Zero(n, n);
        bool any = false;
        for (std::size_t t = 0; t < batch.size(); ++t) {
            if (z[t] >= 1.0) continue;
            const auto& tr = ts.triplets[static_cast<std::size_t>(batch[t])];
            const double w = scale * weights[static_cast<std::size_t>(batch[t])];
            s(tr.positive, tr.positive) += w;
            s(tr.negative, tr.negative) -= w;
            s(tr.anchor, tr.positive) -= w;
            s(tr.positive, tr.anchor) -= w;
            s(tr.anchor, tr.negative) += w;
            s(tr.negative, tr.anchor) += w;
            any = true;
        }
        if (any) grad.noalias() += ds.X.transpose() * s * ds.X;
    } else {
        for (std::size_t t = 0; t < batch.size(); ++t) {
            if (z[t] >= 1.0) continue;
            const auto& tr = ts.triplets[static_cast<std::size_t>(batch[t])];
            const double w = scale * weights[static_cast<std::size_t>(batch[t])];
            const Vector dp = (ds.X.row(tr.anchor) - ds.X.row(tr.positive)).transpose();
            const Vector dn = (ds.X.row(tr.anchor) - ds.X.row(tr.negative)).transpose();
            grad.noalias() += w * (dp * dp.transpose());
            grad.noalias() -= w * (dn * dn.transpose());
        }
    }
}

double weighted_objective_impl(const Matrix& m, const TripletSet& ts, const Dataset& ds,
                               const std::vector<double>& weights,
                               const std::vector<int>& idx_all) {
    double obj = 0.5 * m.squaredNorm();
    if (ts.empty()) return obj;
    const auto z = margins_impl(m, ts, ds, idx_all);
    for (std::size_t i = 0; i < z.size(); ++i) obj += weights[i] * hinge(z[i]);
    return obj;
}

double rescaled_objective_from_margins(const Matrix& m, const std::vector<double>& z,
                                       const RescaledHingeParams& p) {
    double loss = 0.0;
    for (const double zi : z) loss += rescaled_hinge(zi, p);
    return 0.5 * m.squaredNorm() + p.C * loss;
}

std::vector<double> normalized_anchor_weights(const std::vector<double>& w, const TripletSet& ts,
                                              int n) {
    std::vector<double> inst(static_cast<std::size_t>(n), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        inst[static_cast<std::size_t>(ts.triplets[i].anchor)] += w[i];
        total += w[i];
    }
    if (total > 0.0) {
        for (auto& x : inst) x /= total;
    }
    return inst;
}

int count_active(const std::vector<double>& z) {
    return static_cast<int>(std::count_if(z.begin(), z.end(), [](double zi) { return zi < 1.0; }));
}

} // namespace

void validate_config(const OptimizerConfig& cfg) {
    if (!(cfg.lambda > 0.0) || !(cfg.lambda < 1.0)) {
        throw InvalidInputError("optimizer: lambda must be in (0, 1)");
    }
    if (!(cfg.C > 0.0) || !std::isfinite(cfg.C)) {
        throw InvalidInputError("optimizer: C must be positive");
    }
    if (!(cfg.eta > 0.0) || !std::isfinite(cfg.eta)) {
        throw InvalidInputError("optimizer: eta must be positive");
    }
    if (cfg.max_hq_iters < 0) {
        throw InvalidInputError("optimizer: max_hq_iters must be non-negative");
    }
    if (cfg.max_inner_epochs < 0) {
        throw InvalidInputError("optimizer: max_inner_epochs must be non-negative");
    }
    if (cfg.batch_size < -1) {
        throw InvalidInputError("optimizer: batch_size must be -1 (full), 0 (auto) or positive");
    }
    if (!(cfg.inner_tol > 0.0)) {
        throw InvalidInputError("optimizer: inner_tol must be positive");
    }
}

int resolve_batch_size(const OptimizerConfig& cfg, std::size_t n_triplets) {
    const int n = static_cast<int>(n_triplets);
    if (cfg.batch_size > 0) return std::min(cfg.batch_size, std::max(n, 1));
    if (cfg.batch_size == -1) return std::max(n, 1);
    return n_triplets <= 5000 ? std::max(n, 1) : 512;
}

TripletMargins compute_margins(const Metric& m, const TripletSet& ts, const Dataset& ds) {
    check_triplets(ts, ds);
    if (ds.dim() != m.dim()) {
        throw InvalidInputError("compute_margins: metric/data dimension mismatch");
    }
    const auto idx = all_indices(ts.size());
    return margins_impl(m.entries(), ts, ds, idx);
}

double objective_rescaled(const Metric& m, const TripletSet& ts, const Dataset& ds,
                          const RescaledHingeParams& p) {
    const auto z = compute_margins(m, ts, ds);
    return rescaled_objective_from_margins(m.entries(), z, p);
}

double weighted_hinge_objective(const Metric& m, const TripletSet& ts, const Dataset& ds,
                                const std::vector<double>& weights) {
    if (weights.size() != ts.size()) {
        throw InvalidInputError("weighted_hinge_objective: one weight per triplet required");
    }
    return weighted_objective_impl(m.entries(), ts, ds, weights, all_indices(ts.size()));
}

double hq_augmented_objective(const Metric& m, const TripletMargins& z,
                              const std::vector<double>& v, const RescaledHingeParams& p) {
    if (z.size() != v.size()) {
        throw InvalidInputError("hq_augmented_objective: margin/auxiliary size mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        sum += p.eta * hinge(z[i]) * v[i] - conjugate_g(v[i]);
    }
    return -0.5 * frobenius_sq(m) + p.C * p.beta * sum;
}

Matrix inner_gradient(const Metric& m, const TripletSet& ts, const Dataset& ds,
                      const std::vector<double>& weights, std::span<const int> batch) {
    if (batch.empty()) {
        throw InvalidInputError("inner_gradient: batch must be non-empty");
    }
    if (weights.size() != ts.size()) {
        throw InvalidInputError("inner_gradient: one weight per triplet required");
    }
    const auto z = margins_impl(m.entries(), ts, ds, batch);
    Matrix grad = m.entries();
    const double scale =
        static_cast<double>(ts.size()) / static_cast<double>(batch.size());
    add_hinge_subgradient(grad, ts, ds, weights, batch, z, scale);
    return grad;
}

Metric inner_solve(const Metric& m0, const TripletSet& ts, const Dataset& ds,
                   const std::vector<double>& weights, const OptimizerConfig& cfg,
                   std::uint64_t salt) {
    validate_config(cfg);
    check_triplets(ts, ds);
    if (weights.size() != ts.size()) {
        throw InvalidInputError("inner_solve: one weight per triplet required");
    }
    for (const double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw InvalidInputError("inner_solve: weights must be positive and finite");
        }
    }
    if (!ts.empty() && ds.dim() != m0.dim()) {
        throw InvalidInputError("inner_solve: metric/data dimension mismatch");
    }

    Matrix m = 0.5 * (m0.entries() + m0.entries().transpose());
    const std::size_t total = ts.size();
    const auto idx_all = all_indices(total);
    double prev = weighted_objective_impl(m, ts, ds, weights, idx_all);

    if (ts.empty()) {
        for (int epoch = 0; epoch < cfg.max_inner_epochs; ++epoch) {
            m *= (1.0 - cfg.lambda);
            const double obj = 0.5 * m.squaredNorm();
            if (std::abs(obj - prev) <= cfg.inner_tol * std::max(1.0, std::abs(prev))) {
                break;
            }
            prev = obj;
        }
        return psd_project(Metric(std::move(m)));
    }

    const int batch_size = resolve_batch_size(cfg, total);
    std::vector<int> order = idx_all;
    Rng rng(mix_seed(cfg.seed, salt));
    const bool full_batch = static_cast<std::size_t>(batch_size) >= total;

    for (int epoch = 0; epoch < cfg.max_inner_epochs; ++epoch) {
        if (!full_batch) rng.shuffle(order);
        for (std::size_t start = 0; start < total; start += static_cast<std::size_t>(batch_size)) {
            const std::size_t len = std::min<std::size_t>(batch_size, total - start);
            const std::span<const int> batch(order.data() + start, len);
            const auto z = margins_impl(m, ts, ds, batch);
            Matrix grad = m;
            add_hinge_subgradient(grad, ts, ds, weights, batch, z,
                                  static_cast<double>(total) / static_cast<double>(len));
            m -= cfg.lambda * grad;
            m = 0.5 * (m + m.transpose());
        }
        const double obj = weighted_objective_impl(m, ts, ds, weights, idx_all);
        if (!std::isfinite(obj)) {
            throw DivergenceError(cfg.lambda);
        }
        if (std::abs(obj - prev) <= cfg.inner_tol * std::max(1.0, std::abs(prev))) {
            prev = obj;
            break;
        }
        prev = obj;
    }
    return psd_project(Metric(std::move(m)));
}

TrainReport train_rdml(const Dataset& ds, const TripletSet& ts, const OptimizerConfig& cfg,
                       std::ostream* verbose) {
    validate_config(cfg);
    validate_dataset(ds);
    check_triplets(ts, ds);
    if (ts.empty()) {
        throw InvalidInputError("train_rdml: need at least one triplet");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const RescaledHingeParams p = make_rescaled_hinge_params(cfg.eta, cfg.C);
    const int d = ds.dim();
    const auto idx_all = all_indices(ts.size());

    Matrix m = Matrix::Identity(d, d);
    TrainReport rep(Metric::identity(d));
    std::vector<double> z = margins_impl(m, ts, ds, idx_all);
    rep.objective_trace.push_back(rescaled_objective_from_margins(m, z, p));

    std::vector<double> v(ts.size(), -1.0);
    std::vector<double> w;
    for (int s = 1; s <= cfg.max_hq_iters; ++s) {
        v = hq_weight_update(z, cfg.eta);
        w = triplet_weights(v, p);
        rep.f3_trace.push_back(hq_augmented_objective(Metric(m), z, v, p));
        rep.anchor_weights.push_back(normalized_anchor_weights(w, ts, ds.n()));

        m = inner_solve(Metric(std::move(m)), ts, ds, w, cfg, static_cast<std::uint64_t>(s))
                .entries();
        z = margins_impl(m, ts, ds, idx_all);
        const double obj = rescaled_objective_from_margins(m, z, p);
        rep.objective_trace.push_back(obj);
        rep.active_counts.push_back(count_active(z));
        if (verbose) {
            *verbose << "hq iter " << s << ": objective=" << obj
                     << " active=" << rep.active_counts.back() << "/" << ts.size() << "\n";
        }
    }
    rep.final_weights = w;
    rep.metric = Metric(std::move(m));
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

TrainReport train_baseline_hinge(const Dataset& ds, const TripletSet& ts,
                                 const OptimizerConfig& cfg, std::ostream* verbose) {
    validate_config(cfg);
    validate_dataset(ds);
    check_triplets(ts, ds);
    const auto t0 = std::chrono::steady_clock::now();
    const int d = ds.dim();
    const auto idx_all = all_indices(ts.size());

    TrainReport rep(Metric::identity(d));
    std::vector<double> w(ts.size(), cfg.C);
    rep.objective_trace.push_back(
        weighted_objective_impl(Matrix::Identity(d, d), ts, ds, w, idx_all));

    rep.metric = inner_solve(Metric::identity(d), ts, ds, w, cfg, 1);

    const auto z = margins_impl(rep.metric.entries(), ts, ds, idx_all);
    rep.objective_trace.push_back(weighted_objective_impl(rep.metric.entries(), ts, ds, w, idx_all));
    rep.active_counts.push_back(count_active(z));
    if (!ts.empty()) {
        rep.anchor_weights.push_back(normalized_anchor_weights(w, ts, ds.n()));
    }
    rep.final_weights = std::move(w);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verbose) {
        *verbose << "baseline: objective=" << rep.objective_trace.back()
                 << " active=" << rep.active_counts.back() << "/" << ts.size() << "\n";
    }
    return rep;
}

} // namespace rdml
