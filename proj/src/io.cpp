#include "heic/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "heic/errors.hpp"

namespace heic::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_edge_list(std::ostream& out, const SymmetricMatrix& adjacency) {
  const Eigen::Index n = adjacency.order();
  out << "n=" << n << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (adjacency(i, j) != 0.0) out << i << ' ' << j << '\n';
    }
  }
}

SymmetricMatrix read_edge_list(std::istream& in) {
  std::string line;
  Eigen::Index n = -1;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("n=", 0) != 0) throw ValidationError("edge list must start with 'n=<count>'");
    try {
      std::size_t used = 0;
      n = std::stoll(line.substr(2), &used);
      if (used != line.size() - 2) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw ValidationError("bad edge list header '" + line + "'");
    }
    break;
  }
  if (n < 0) throw ValidationError("edge list is missing its 'n=<count>' header");

  SymmetricMatrix adj(n);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long i = -1;
    long long j = -1;
    std::string extra;
    if (!(fields >> i >> j) || (fields >> extra)) {
      throw ValidationError("malformed edge on line " + std::to_string(line_no));
    }
    if (i < 0 || j >= n || i >= j) {
      throw ValidationError("edge on line " + std::to_string(line_no) +
                            " must satisfy 0 <= i < j < n");
    }
    adj.set(i, j, 1.0);
  }
  return adj;
}

void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) {
      cell = trim(cell);
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError("bad CSV cell '" + cell + "' on row " + std::to_string(rows.size() + 1));
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError("ragged CSV at row " + std::to_string(rows.size() + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

SymmetricMatrix read_symmetric_csv(std::istream& in) {
  Eigen::MatrixXd m = read_dense_csv(in);
  if (m.rows() != m.cols()) throw ValidationError("matrix CSV must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw ValidationError("matrix CSV is not symmetric");
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  return SymmetricMatrix::from_upper(std::move(sym));
}

SymmetricMatrix load_edge_list(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void save_edge_list(const std::string& path, const SymmetricMatrix& adjacency) {
  auto out = open_out(path);
  write_edge_list(out, adjacency);
}

void save_dense_csv(const std::string& path, const Eigen::MatrixXd& m) {
  auto out = open_out(path);
  write_dense_csv(out, m);
}

SymmetricMatrix load_symmetric_csv(const std::string& path) {
  auto in = open_in(path);
  return read_symmetric_csv(in);
}

}  // namespace heic::io
