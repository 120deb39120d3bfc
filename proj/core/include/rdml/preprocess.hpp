#pragma once

#include "rdml/dataset.hpp"

#include <cstdint>
#include <vector>

namespace rdml {

struct ZscoreResult {
    Dataset train;
    Dataset test;
    Eigen::VectorXd means;
    Eigen::VectorXd stds; // population std; zero-variance columns report 1
};

/// Standardizes both sets with the train set's per-attribute mean and
/// population std. Zero-variance attributes pass through unscaled.
/// The test set may be empty.
ZscoreResult zscore_fit_apply(const Dataset& train, const Dataset& test);

struct PcaResult {
    Dataset train;
    Dataset test;
    Eigen::MatrixXd projection; // d x target_dim, orthonormal columns
    Eigen::VectorXd mean; // train mean subtracted before projecting
    Eigen::VectorXd eigenvalues; // full covariance spectrum, descending
};

/// Projects both sets onto the top eigenvectors of the train covariance.
/// Throws InvalidInputError when target_dim exceeds the input dimension.
PcaResult pca_fit_apply(const Dataset& train, const Dataset& test, int target_dim);

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 0;
    bool stratified = true;
};

struct Split {
    Dataset train;
    Dataset test;
    std::vector<int> train_rows; // ascending indices into the input
    std::vector<int> test_rows;
};

/// Deterministic under the seed. Stratified splits keep class proportions
/// within one instance per class (largest-remainder apportionment); a
/// singleton class goes entirely to train.
Split train_test_split(const Dataset& ds, const SplitSpec& spec);

} // namespace rdml
