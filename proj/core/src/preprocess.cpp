#include "rdml/preprocess.hpp"

#include "rdml/errors.hpp"
#include "rdml/metric.hpp"
#include "rdml/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace rdml {

ZscoreResult zscore_fit_apply(const Dataset& train, const Dataset& test) {
    validate_dataset(train);
    if (train.n() == 0) {
        throw InvalidInputError("zscore_fit_apply: train set is empty");
    }
    if (test.n() > 0 && test.dim() != train.dim()) {
        throw InvalidInputError("zscore_fit_apply: train/test dimension mismatch");
    }
    const int d = train.dim();
    ZscoreResult out;
    out.means = train.X.colwise().mean();
    Eigen::MatrixXd centered = train.X.rowwise() - out.means.transpose();
    out.stds = (centered.array().square().colwise().mean()).sqrt();
    for (int j = 0; j < d; ++j) {
        if (out.stds(j) <= 0.0) out.stds(j) = 1.0;
    }
    const auto apply = [&](const Dataset& ds) {
        Dataset scaled;
        scaled.y = ds.y;
        scaled.X = (ds.X.rowwise() - out.means.transpose()).array().rowwise() /
                   out.stds.transpose().array();
        return scaled;
    };
    out.train = apply(train);
    out.test = test.n() > 0 ? apply(test) : test;
    return out;
}

PcaResult pca_fit_apply(const Dataset& train, const Dataset& test, int target_dim) {
    validate_dataset(train);
    const int d = train.dim();
    if (target_dim <= 0 || target_dim > d) {
        throw InvalidInputError("pca_fit_apply: target_dim must be in [1, d]");
    }
    if (train.n() == 0) {
        throw InvalidInputError("pca_fit_apply: train set is empty");
    }
    PcaResult out;
    out.mean = train.X.colwise().mean();
    Eigen::MatrixXd centered = train.X.rowwise() - out.mean.transpose();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / train.n();
    cov = 0.5 * (cov + cov.transpose());
    const EigenDecomposition eig = sym_eig(cov);
    out.eigenvalues = eig.eigenvalues;
    out.projection = eig.eigenvectors.leftCols(target_dim);
    out.train.y = train.y;
    out.train.X = centered * out.projection;
    out.test.y = test.y;
    if (test.n() > 0) {
        out.test.X = (test.X.rowwise() - out.mean.transpose()) * out.projection;
    } else {
        out.test.X.resize(0, target_dim);
    }
    return out;
}

Split train_test_split(const Dataset& ds, const SplitSpec& spec) {
    validate_dataset(ds);
    if (!(spec.train_fraction > 0.0) || !(spec.train_fraction < 1.0)) {
        throw InvalidInputError("train_test_split: train_fraction must be in (0, 1)");
    }
    const int n = ds.n();
    if (n < 2) {
        throw InvalidInputError("train_test_split: need at least two instances");
    }
    const int total_train =
        static_cast<int>(std::lround(spec.train_fraction * static_cast<double>(n)));

    Rng rng(spec.seed);
    Split out;
    if (!spec.stratified) {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        rng.shuffle(order);
        out.train_rows.assign(order.begin(), order.begin() + total_train);
        out.test_rows.assign(order.begin() + total_train, order.end());
    } else {
        std::map<int, std::vector<int>> by_label;
        for (int i = 0; i < n; ++i) by_label[ds.y[static_cast<std::size_t>(i)]].push_back(i);

        // Largest-remainder apportionment of the train quota across classes.
        struct ClassQuota {
            int label;
            int count;
            int quota;
            double remainder;
        };
        std::vector<ClassQuota> quotas;
        int assigned = 0;
        int forced_singletons = 0;
        for (const auto& [label, members] : by_label) {
            const int c = static_cast<int>(members.size());
            if (c == 1) {
                // Singleton classes go entirely to train.
                quotas.push_back({label, c, 1, 0.0});
                ++forced_singletons;
                assigned += 1;
                continue;
            }
            const double exact = spec.train_fraction * c;
            const int base = static_cast<int>(std::floor(exact + 1e-9));
            quotas.push_back({label, c, base, exact - base});
            assigned += base;
        }
        int leftover = total_train - assigned;
        std::vector<std::size_t> order(quotas.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (quotas[a].remainder != quotas[b].remainder) {
                return quotas[a].remainder > quotas[b].remainder;
            }
            return quotas[a].label < quotas[b].label;
        });
        for (std::size_t i = 0; i < order.size() && leftover > 0; ++i) {
            auto& q = quotas[order[i]];
            if (q.count > 1 && q.quota < q.count) {
                ++q.quota;
                --leftover;
            }
        }
        // Keep at least one train member per class so training never loses a class.
        for (auto& q : quotas) {
            if (q.quota == 0) q.quota = 1;
            if (q.quota >= q.count && q.count > 1) q.quota = q.count - 1;
        }

        for (const auto& q : quotas) {
            std::vector<int> members = by_label[q.label];
            rng.shuffle(members);
            for (int i = 0; i < q.count; ++i) {
                if (i < q.quota) {
                    out.train_rows.push_back(members[static_cast<std::size_t>(i)]);
                } else {
                    out.test_rows.push_back(members[static_cast<std::size_t>(i)]);
                }
            }
        }
        (void)forced_singletons;
    }
    std::sort(out.train_rows.begin(), out.train_rows.end());
    std::sort(out.test_rows.begin(), out.test_rows.end());
    out.train = select_rows(ds, out.train_rows);
    out.test = select_rows(ds, out.test_rows);
    return out;
}

} // namespace rdml
