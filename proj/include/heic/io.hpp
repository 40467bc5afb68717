#pragma once

// File formats:
//   edge list   first line "n=<count>", then one "i j" per edge (0-based, i < j)
//   dense CSV   one matrix row per line, comma separated, 17 significant digits

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "heic/symmetric_matrix.hpp"

namespace heic::io {

void write_edge_list(std::ostream& out, const SymmetricMatrix& adjacency);
SymmetricMatrix read_edge_list(std::istream& in);

void write_dense_csv(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_dense_csv(std::istream& in);
/// Reads a square CSV matrix. Asymmetry up to 1e-12 relative is averaged out;
/// anything larger is rejected.
SymmetricMatrix read_symmetric_csv(std::istream& in);

/// Shortest-round-trip-safe text for a double ("%.17g").
std::string format_double(double value);

SymmetricMatrix load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const SymmetricMatrix& adjacency);
void save_dense_csv(const std::string& path, const Eigen::MatrixXd& m);
SymmetricMatrix load_symmetric_csv(const std::string& path);

}  // namespace heic::io
