#include "rdml/dataset.hpp"

#include "rdml/errors.hpp"

#include <algorithm>

namespace rdml {

void validate_dataset(const Dataset& ds) {
    if (static_cast<std::size_t>(ds.X.rows()) != ds.y.size()) {
        throw InvalidInputError("dataset: label count does not match row count");
    }
    if (!ds.X.allFinite()) {
        throw InvalidInputError("dataset: features contain NaN or Inf");
    }
}

std::vector<int> distinct_labels(const Dataset& ds) {
    std::vector<int> labels = ds.y;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

Dataset select_rows(const Dataset& ds, const std::vector<int>& rows) {
    Dataset out;
    out.X.resize(static_cast<Eigen::Index>(rows.size()), ds.X.cols());
    out.y.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.X.row(static_cast<Eigen::Index>(i)) = ds.X.row(rows[i]);
        out.y[i] = ds.y[static_cast<std::size_t>(rows[i])];
    }
    return out;
}

} // namespace rdml
