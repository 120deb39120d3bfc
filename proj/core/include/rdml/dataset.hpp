#pragma once

#include <Eigen/Dense>

#include <vector>

namespace rdml {

/// Feature matrix (one row per instance) with integer labels. Treated as
/// immutable after preprocessing; all transformations return new values.
struct Dataset {
    Eigen::MatrixXd X; // n x d
    std::vector<int> y; // n labels

    int n() const { return static_cast<int>(X.rows()); }
    int dim() const { return static_cast<int>(X.cols()); }
};

/// Throws InvalidInputError on label/row count mismatch or non-finite features.
void validate_dataset(const Dataset& ds);

/// Sorted distinct labels.
std::vector<int> distinct_labels(const Dataset& ds);

/// New dataset containing the given rows, in the given order.
Dataset select_rows(const Dataset& ds, const std::vector<int>& rows);

} // namespace rdml
