#pragma once

#include <string>

#include "boselab/fock_ops.hpp"

namespace boselab {

/// Binary Fock-state format: magic "BLFK", format version, M, n_max, ordering
/// tag, then the dense amplitude array as little-endian complex128 in graded
/// lexicographic order.
void save_state(const std::string& path, const FockVector& psi);
FockVector load_state(const std::string& path);

/// Coordinate sparse-triplet text dump: "row col re im" per line.
void dump_sparse(const std::string& path, const SparseOp& op);

/// Dense complex matrix as text (row-major "re im" pairs), for offline
/// inspection of extracted blocks.
void dump_dense(const std::string& path, const Eigen::MatrixXcd& m);

/// Atomic text write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace boselab
