#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "rpclust/synth.hpp"

namespace rpclust {

// CSV layout: one data point per row, comma-separated, 17 significant digits.
// Labels: one integer per line.

/// Writes matrix rows as CSV lines (no header).
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

/// Parses a rectangular numeric CSV. Blank lines are skipped. Throws ParseError
/// naming the 1-based row (and column) on ragged rows or non-numeric cells.
Eigen::MatrixXd read_matrix_csv(std::istream& is);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_labels(std::ostream& os, const std::vector<int>& labels);
void write_labels(const std::string& path, const std::vector<int>& labels);
std::vector<int> read_labels(std::istream& is);
std::vector<int> read_labels(const std::string& path);

/// Points go to `data_path` (transposed to one point per row); labels, if any,
/// to `labels_path` when it is non-empty.
void save_dataset(const DataSet& data, const std::string& data_path, const std::string& labels_path);
DataSet load_dataset(const std::string& data_path, const std::string& labels_path = {});

/// Scales every column to unit Euclidean norm. Zero columns raise InputError.
void normalize_columns(DataSet& data);

}  // namespace rpclust
