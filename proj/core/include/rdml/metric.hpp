#pragma once

#include <Eigen/Dense>

#include <string>

namespace rdml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Symmetric d x d matrix parameterizing the squared Mahalanobis distance
/// (x - y)^T M (x - y). Values are immutable once constructed.
class Metric {
public:
    /// Throws InvalidInputError unless `entries` is square, finite and
    /// symmetric (entrywise within 1e-12 relative to the largest entry).
    explicit Metric(Matrix entries);

    static Metric identity(int dim);
    static Metric zero(int dim);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }

private:
    Matrix entries_;
};

/// Squared Mahalanobis distance (x - y)^T M (x - y).
double sq_dist(const Metric& m, const Vector& x, const Vector& y);

/// Sum of squared entries.
double frobenius_sq(const Metric& m);

struct EigenDecomposition {
    Vector eigenvalues; // descending
    Matrix eigenvectors; // orthonormal columns, aligned with eigenvalues
};

/// Symmetric eigendecomposition, eigenvalues descending.
/// Throws InvalidInputError on non-symmetric input.
EigenDecomposition sym_eig(const Matrix& m);
EigenDecomposition sym_eig(const Metric& m);

/// Frobenius-nearest positive semidefinite matrix: eigendecompose, clip
/// negative eigenvalues to zero, reconstruct. Returns the input unchanged
/// when it is already PSD, which makes the projection exactly idempotent.
Metric psd_project(const Metric& m);

/// Plain-text matrix file: first line "d", then d rows of d space-separated
/// decimals with 17 significant digits.
void save_metric(const Metric& m, const std::string& path);
Metric load_metric(const std::string& path);

} // namespace rdml
