#pragma once

#include "rdml/dataset.hpp"

#include <cstdint>
#include <vector>

namespace rdml {

/// Two-class Gaussian generator with contaminating outliers. Outliers of
/// class i are drawn from N(mu_oi, sigma_oi) with
///   mu_oi    = (1 - outlier_intensity) * mu_i + outlier_intensity * mu_j
///   sigma_oi = 10 * outlier_intensity * sigma_i
/// where mu_j is the other class's mean. Outliers keep class i's label.
struct SyntheticSpec {
    Eigen::VectorXd mu1;
    Eigen::VectorXd mu2;
    Eigen::MatrixXd sigma1;
    Eigen::MatrixXd sigma2;
    int n_per_class = 100;
    double outlier_ratio = 0.0; // [0, 1)
    double outlier_intensity = 0.3; // (0, 1]
    std::uint64_t seed = 0;

    /// mu1 = 0, mu2 = (separation, 0, ...), identity covariances.
    static SyntheticSpec two_gaussians(int dim, double separation, int n_per_class,
                                       std::uint64_t seed);
};

struct SyntheticData {
    Dataset data;
    std::vector<int> outlier_indices; // ascending row indices
};

/// Class i contributes round((1 - ratio) * n_per_class) inliers from
/// N(mu_i, sigma_i) and the remainder as outliers. Labels are 0 and 1.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

struct NoisyData {
    Dataset data;
    std::vector<int> flipped_indices; // ascending row indices
};

/// Flips the labels of floor(nl * n) distinct instances, chosen uniformly;
/// each new label is drawn uniformly from the other classes present.
/// Requires at least two classes.
NoisyData inject_label_noise(const Dataset& ds, double nl, std::uint64_t seed);

} // namespace rdml
