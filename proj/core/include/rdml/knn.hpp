#pragma once

#include "rdml/dataset.hpp"
#include "rdml/metric.hpp"

namespace rdml {

struct KnnConfig {
    int k = 3;
};

/// Majority label among the k training points nearest to the query under the
/// metric. Vote ties go to the class with the nearest member, then to the
/// lower class id. Neighbor distance ties break toward the lower index.
int knn_predict(const Dataset& train, const Metric& m, const Eigen::VectorXd& query,
                const KnnConfig& cfg = {});

/// Fraction of test points predicted correctly. Throws InvalidInputError on
/// an empty test set.
double accuracy(const Dataset& train, const Dataset& test, const Metric& m,
                const KnnConfig& cfg = {});

} // namespace rdml
