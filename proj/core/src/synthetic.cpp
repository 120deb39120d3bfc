#include "rdml/synthetic.hpp"

#include "rdml/errors.hpp"
#include "rdml/metric.hpp"
#include "rdml/rng.hpp"

#include <cmath>
#include <utility>

namespace rdml {

SyntheticSpec SyntheticSpec::two_gaussians(int dim, double separation, int n_per_class,
                                           std::uint64_t seed) {
    SyntheticSpec spec;
    spec.mu1 = Eigen::VectorXd::Zero(dim);
    spec.mu2 = Eigen::VectorXd::Zero(dim);
    spec.mu2(0) = separation;
    spec.sigma1 = Eigen::MatrixXd::Identity(dim, dim);
    spec.sigma2 = Eigen::MatrixXd::Identity(dim, dim);
    spec.n_per_class = n_per_class;
    spec.seed = seed;
    return spec;
}

namespace {

// Symmetric square root via eigendecomposition; tiny negative eigenvalues
// from rounding are clipped.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& sigma) {
    const EigenDecomposition eig = sym_eig(sigma);
    if (eig.eigenvalues.minCoeff() < -1e-8 * std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff())) {
        throw InvalidInputError("generate_synthetic: covariance is not PSD");
    }
    const Eigen::VectorXd root = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose();
}

Eigen::VectorXd draw_gaussian(Rng& rng, const Eigen::VectorXd& mu, const Eigen::MatrixXd& root) {
    Eigen::VectorXd z(mu.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    return mu + root * z;
}

} // namespace

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    const auto d = spec.mu1.size();
    if (spec.mu2.size() != d || spec.sigma1.rows() != d || spec.sigma2.rows() != d) {
        throw InvalidInputError("generate_synthetic: dimension mismatch in spec");
    }
    if (spec.n_per_class <= 0) {
        throw InvalidInputError("generate_synthetic: n_per_class must be positive");
    }
    if (!(spec.outlier_ratio >= 0.0) || !(spec.outlier_ratio < 1.0)) {
        throw InvalidInputError("generate_synthetic: outlier_ratio must be in [0, 1)");
    }
    if (!(spec.outlier_intensity > 0.0) || !(spec.outlier_intensity <= 1.0)) {
        throw InvalidInputError("generate_synthetic: outlier_intensity must be in (0, 1]");
    }

    const int n_inlier = static_cast<int>(
        std::lround((1.0 - spec.outlier_ratio) * static_cast<double>(spec.n_per_class)));
    const int n_outlier = spec.n_per_class - n_inlier;

    Rng rng(spec.seed);
    SyntheticData out;
    out.data.X.resize(2 * spec.n_per_class, d);
    out.data.y.resize(static_cast<std::size_t>(2 * spec.n_per_class));

    int row = 0;
    for (int cls = 0; cls < 2; ++cls) {
        const auto& mu = cls == 0 ? spec.mu1 : spec.mu2;
        const auto& mu_other = cls == 0 ? spec.mu2 : spec.mu1;
        const auto& sigma = cls == 0 ? spec.sigma1 : spec.sigma2;
        const Eigen::MatrixXd root = psd_sqrt(sigma);

        for (int i = 0; i < n_inlier; ++i, ++row) {
            out.data.X.row(row) = draw_gaussian(rng, mu, root);
            out.data.y[static_cast<std::size_t>(row)] = cls;
        }
        if (n_outlier > 0) {
            const Eigen::VectorXd mu_o =
                (1.0 - spec.outlier_intensity) * mu + spec.outlier_intensity * mu_other;
            const Eigen::MatrixXd root_o = std::sqrt(10.0 * spec.outlier_intensity) * root;
            for (int i = 0; i < n_outlier; ++i, ++row) {
                out.data.X.row(row) = draw_gaussian(rng, mu_o, root_o);
                out.data.y[static_cast<std::size_t>(row)] = cls;
                out.outlier_indices.push_back(row);
            }
        }
    }
    return out;
}

NoisyData inject_label_noise(const Dataset& ds, double nl, std::uint64_t seed) {
    validate_dataset(ds);
    if (!(nl >= 0.0) || !(nl < 1.0)) {
        throw InvalidInputError("inject_label_noise: noise level must be in [0, 1)");
    }
    const std::vector<int> labels = distinct_labels(ds);
    if (labels.size() < 2) {
        throw InvalidInputError("inject_label_noise: need at least two classes");
    }

    NoisyData out;
    out.data = ds;
    const int n = ds.n();
    const int count = static_cast<int>(std::floor(nl * static_cast<double>(n) + 1e-9));
    if (count == 0) return out;

    Rng rng(seed);
    out.flipped_indices = rng.sample_indices(n, count);
    for (const int i : out.flipped_indices) {
        const int original = ds.y[static_cast<std::size_t>(i)];
        std::vector<int> others;
        others.reserve(labels.size() - 1);
        for (const int l : labels) {
            if (l != original) others.push_back(l);
        }
        out.data.y[static_cast<std::size_t>(i)] =
            others[static_cast<std::size_t>(rng.below(others.size()))];
    }
    return out;
}

} // namespace rdml
