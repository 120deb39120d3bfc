#include "rdml/metric.hpp"

#include "rdml/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

namespace rdml {

namespace {

void check_symmetric(const Matrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        throw InvalidInputError(std::string(who) + ": matrix is not square");
    }
    if (!m.allFinite()) {
        throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw InvalidInputError(std::string(who) + ": matrix is not symmetric");
    }
}

} // namespace

Metric::Metric(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0) {
        throw InvalidInputError("Metric: dimension must be positive");
    }
    check_symmetric(entries_, "Metric");
}

Metric Metric::identity(int dim) { return Metric(Matrix::Identity(dim, dim)); }

Metric Metric::zero(int dim) { return Metric(Matrix::Zero(dim, dim)); }

double sq_dist(const Metric& m, const Vector& x, const Vector& y) {
    if (x.size() != m.dim() || y.size() != m.dim()) {
        throw InvalidInputError("sq_dist: dimension mismatch");
    }
    const Vector diff = x - y;
    return diff.dot(m.entries() * diff);
}

double frobenius_sq(const Metric& m) { return m.entries().squaredNorm(); }

EigenDecomposition sym_eig(const Matrix& m) {
    check_symmetric(m, "sym_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw InvalidStateError("sym_eig: eigendecomposition failed to converge");
    }
    const auto n = m.rows();
    EigenDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
    }
    return out;
}

EigenDecomposition sym_eig(const Metric& m) { return sym_eig(m.entries()); }

Metric psd_project(const Metric& m) {
    EigenDecomposition eig = sym_eig(m);
    if (eig.eigenvalues.minCoeff() >= 0.0) {
        return m;
    }
    const Vector clipped = eig.eigenvalues.cwiseMax(0.0);
    Matrix out = eig.eigenvectors * clipped.asDiagonal() * eig.eigenvectors.transpose();
    out = 0.5 * (out + out.transpose());
    return Metric(std::move(out));
}

void save_metric(const Metric& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("save_metric: cannot open '" + path + "' for writing", 0);
    }
    const int d = m.dim();
    out << d << "\n";
    char buf[64];
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m.entries()(i, j));
            out << buf << (j + 1 == d ? "" : " ");
        }
        out << "\n";
    }
    if (!out) {
        throw ParseError("save_metric: write to '" + path + "' failed", 0);
    }
}

Metric load_metric(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("load_metric: cannot open '" + path + "'", 0);
    }
    int d = 0;
    if (!(in >> d) || d <= 0) {
        throw ParseError("load_metric: expected positive dimension on first line", 1);
    }
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (!(in >> m(i, j))) {
                throw ParseError("load_metric: expected " + std::to_string(d) + "x" +
                                     std::to_string(d) + " entries",
                                 static_cast<std::size_t>(i) + 2);
            }
        }
    }
    return Metric(std::move(m));
}

} // namespace rdml
