#include "rdml/knn.hpp"

#include "rdml/errors.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace rdml {

int knn_predict(const Dataset& train, const Metric& m, const Eigen::VectorXd& query,
                const KnnConfig& cfg) {
    if (train.n() == 0) {
        throw InvalidInputError("knn_predict: training set is empty");
    }
    if (cfg.k <= 0) {
        throw InvalidInputError("knn_predict: k must be positive");
    }
    if (query.size() != train.dim() || m.dim() != train.dim()) {
        throw InvalidInputError("knn_predict: dimension mismatch");
    }

    const int n = train.n();
    std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd diff = query - train.X.row(i).transpose();
        dist[static_cast<std::size_t>(i)] = {diff.dot(m.entries() * diff), i};
    }

    const int k = std::min(cfg.k, n);
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    struct Vote {
        int count = 0;
        double best = 0.0; // distance of the class's nearest member in the k-set
    };
    std::map<int, Vote> votes;
    for (int t = 0; t < k; ++t) {
        const int label = train.y[static_cast<std::size_t>(dist[static_cast<std::size_t>(t)].second)];
        auto [it, inserted] = votes.try_emplace(label, Vote{0, dist[static_cast<std::size_t>(t)].first});
        ++it->second.count;
        if (!inserted) it->second.best = std::min(it->second.best, dist[static_cast<std::size_t>(t)].first);
    }
    int winner = votes.begin()->first;
    Vote best = votes.begin()->second;
    for (const auto& [label, vote] : votes) {
        if (vote.count > best.count || (vote.count == best.count && vote.best < best.best)) {
            winner = label;
            best = vote;
        }
        // equal count and equal nearest distance: map order keeps the lower id
    }
    return winner;
}

double accuracy(const Dataset& train, const Dataset& test, const Metric& m,
                const KnnConfig& cfg) {
    if (test.n() == 0) {
        throw InvalidInputError("accuracy: test set is empty");
    }
    if (test.dim() != train.dim()) {
        throw InvalidInputError("accuracy: train/test dimension mismatch");
    }
    int correct = 0;
    for (int i = 0; i < test.n(); ++i) {
        if (knn_predict(train, m, test.X.row(i).transpose(), cfg) ==
            test.y[static_cast<std::size_t>(i)]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(test.n());
}

} // namespace rdml
