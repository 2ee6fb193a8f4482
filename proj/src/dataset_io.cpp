#include "rpclust/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rpclust/errors.hpp"

namespace rpclust {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  return is;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, long row, long col) {
  cell = trim(cell);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
    throw ParseError("non-numeric cell '" + std::string(cell) + "' at row " + std::to_string(row) +
                         ", column " + std::to_string(col),
                     row, col);
  return v;
}

}  // namespace

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto os = open_out(path);
  write_matrix_csv(os, m);
}

Eigen::MatrixXd read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    std::vector<double> row;
    long col = 1;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = sv.find(',', start);
      const auto cell = sv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      row.push_back(parse_cell(cell, lineno, col));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
      ++col;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("ragged row " + std::to_string(lineno) + ": expected " +
                           std::to_string(rows.front().size()) + " values, found " + std::to_string(row.size()),
                       lineno);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto is = open_in(path);
  return read_matrix_csv(is);
}

void write_labels(std::ostream& os, const std::vector<int>& labels) {
  for (int l : labels) os << l << '\n';
}

void write_labels(const std::string& path, const std::vector<int>& labels) {
  auto os = open_out(path);
  write_labels(os, labels);
}

std::vector<int> read_labels(std::istream& is) {
  std::vector<int> out;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    int v = 0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (ec != std::errc() || ptr != sv.data() + sv.size())
      throw ParseError("bad label '" + std::string(sv) + "' at line " + std::to_string(lineno), lineno);
    out.push_back(v);
  }
  return out;
}

std::vector<int> read_labels(const std::string& path) {
  auto is = open_in(path);
  return read_labels(is);
}

void save_dataset(const DataSet& data, const std::string& data_path, const std::string& labels_path) {
  write_matrix_csv(data_path, data.points.transpose());
  if (data.labels && !labels_path.empty()) write_labels(labels_path, *data.labels);
}

DataSet load_dataset(const std::string& data_path, const std::string& labels_path) {
  DataSet d;
  d.points = read_matrix_csv(data_path).transpose();
  if (!labels_path.empty()) d.labels = read_labels(labels_path);
  d.validate();
  return d;
}

void normalize_columns(DataSet& data) {
  for (Eigen::Index j = 0; j < data.points.cols(); ++j) {
    const double n = data.points.col(j).norm();
    if (n == 0.0) throw InputError("column " + std::to_string(j) + " has zero norm");
    data.points.col(j) /= n;
  }
}

}  // namespace rpclust
