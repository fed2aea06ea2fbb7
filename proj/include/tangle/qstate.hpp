#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tangle/common.hpp"

namespace tangle {

class DensityMatrix;

// Index convention used throughout: qubit 0 is the leftmost tensor factor,
// so the basis label |q_0 q_1 ... q_{n-1}> maps to the integer
// sum_k q_k * 2^(n-1-k).
inline int qubit_bit(std::uint64_t index, int qubit, int n_qubits) {
  return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1ULL);
}

inline std::uint64_t qubit_mask(int qubit, int n_qubits) {
  return 1ULL << (n_qubits - 1 - qubit);
}

// Unit-norm complex amplitude vector over n labeled qubits.
class PureState {
 public:
  PureState(int n_qubits, Vector amplitudes);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

  DensityMatrix to_density() const;

 private:
  int n_qubits_;
  Vector amplitudes_;
};

// Hermitian, PSD, unit-trace complex matrix with qubit labeling.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Matrix matrix);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }

 private:
  int n_qubits_;
  Matrix matrix_;
};

// Bipartition of the qubits: side_a is a nonempty proper subset, side_b the
// implicit complement.
class QubitCut {
 public:
  QubitCut(int n_qubits, std::vector<int> side_a);

  int n_qubits() const { return n_qubits_; }
  const std::vector<int>& side_a() const { return side_a_; }
  std::vector<int> side_b() const;

 private:
  int n_qubits_;
  std::vector<int> side_a_;  // sorted ascending, no duplicates
};

// A focus qubit plus ordered, disjoint, named blocks covering the rest.
class Partition {
 public:
  using Block = std::pair<std::string, std::vector<int>>;

  Partition(int n_qubits, int focus, std::vector<Block> blocks);

  int n_qubits() const { return n_qubits_; }
  int focus() const { return focus_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  // Singleton blocks over all non-focus qubits, named "B1", "B2", ...
  static Partition singletons(int n_qubits, int focus);

 private:
  int n_qubits_;
  int focus_;
  std::vector<Block> blocks_;
};

// Trace over all qubits not in `keep`; the kept qubits retain their order.
DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep);

// Same, computed directly from the amplitudes (no full outer product).
DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep);

// Transpose the factors in `on`; Hermitian but in general not PSD, hence a
// plain matrix result. The matrix overload exists so the operation can be
// applied twice (it is an exact involution).
Matrix partial_transpose(const DensityMatrix& state,
                         const std::vector<int>& on);
Matrix partial_transpose(const Matrix& matrix, int n_qubits,
                         const std::vector<int>& on);

// Reshuffle across the cut: entry (row=(i,j), col=(k,l)) equals the matrix
// entry ((i,k),(j,l)) with i,j indexing side_a and k,l indexing side_b.
// Result has shape d_a^2 x d_b^2.
Matrix realign(const DensityMatrix& state, const QubitCut& cut);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Eigendecomposition of a Hermitian matrix; eigenvalues descending, columns
// of the second element are the matching orthonormal eigenvectors.
std::pair<RealVector, Matrix> eigh(const Matrix& m);

}  // namespace tangle
