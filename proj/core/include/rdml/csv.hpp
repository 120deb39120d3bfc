#pragma once

#include "rdml/dataset.hpp"

#include <string>
#include <vector>

namespace rdml {

/// Reads an RFC-4180-style numeric CSV into a dataset.
/// label_column is a 0-based column index; -1 selects the last column.
/// Throws ParseError (with the offending line) on ragged rows, non-numeric
/// cells, non-integer labels, a missing label column, or an empty file.
Dataset load_csv(const std::string& path, int label_column = -1, bool has_header = false);

/// Writes features (17 significant digits) with the label as last column.
void save_csv(const Dataset& ds, const std::string& path, bool write_header = false);

/// Newline-delimited integer files (flipped/outlier index sets).
std::vector<int> load_index_file(const std::string& path);
void save_index_file(const std::vector<int>& indices, const std::string& path);

} // namespace rdml
