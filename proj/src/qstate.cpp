#include "tangle/qstate.hpp"

#include <algorithm>
#include <stdexcept>

namespace tangle {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

// Validates a qubit index list: in range, strictly ascending.
void check_qubit_list(const std::vector<int>& qubits, int n_qubits,
                      const char* what) {
  if (qubits.empty()) {
    throw std::invalid_argument(std::string(what) + " set must be nonempty");
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n_qubits) {
      throw std::invalid_argument(std::string(what) + " qubit " +
                                  std::to_string(qubits[i]) +
                                  " out of range for " +
                                  std::to_string(n_qubits) + " qubits");
    }
    if (i > 0 && qubits[i] <= qubits[i - 1]) {
      throw std::invalid_argument(std::string(what) +
                                  " set must be strictly ascending");
    }
  }
}

std::vector<int> sorted_copy(std::vector<int> qubits) {
  std::sort(qubits.begin(), qubits.end());
  return qubits;
}

std::vector<int> complement_of(const std::vector<int>& qubits, int n_qubits) {
  std::vector<int> rest;
  rest.reserve(n_qubits - qubits.size());
  std::size_t pos = 0;
  for (int q = 0; q < n_qubits; ++q) {
    if (pos < qubits.size() && qubits[pos] == q) {
      ++pos;
    } else {
      rest.push_back(q);
    }
  }
  return rest;
}

// Base indices of the subspace spanned by `qubits`: entry s is the full-space
// index with the bits of `qubits` set according to s and all others zero.
std::vector<std::uint64_t> subspace_bases(const std::vector<int>& qubits,
                                          int n_qubits) {
  const std::size_t dim = 1ULL << qubits.size();
  std::vector<std::uint64_t> bases(dim, 0);
  for (std::size_t s = 0; s < dim; ++s) {
    std::uint64_t full = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if ((s >> (qubits.size() - 1 - k)) & 1ULL) {
        full |= qubit_mask(qubits[k], n_qubits);
      }
    }
    bases[s] = full;
  }
  return bases;
}

}  // namespace

PureState::PureState(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  const Eigen::Index expected = Eigen::Index(1) << n_qubits_;
  if (amplitudes_.size() != expected) {
    throw std::invalid_argument(
        "amplitude vector has length " + std::to_string(amplitudes_.size()) +
        ", expected 2^" + std::to_string(n_qubits_));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kNorm) {
    throw std::invalid_argument("state squared norm " + std::to_string(norm2) +
                                " deviates from 1 beyond tolerance");
  }
}

DensityMatrix PureState::to_density() const {
  Matrix m = amplitudes_ * amplitudes_.adjoint();
  return DensityMatrix(n_qubits_, std::move(m));
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(n_qubits_);
  const Eigen::Index expected = Eigen::Index(1) << n_qubits_;
  if (matrix_.rows() != expected || matrix_.cols() != expected) {
    throw std::invalid_argument("density matrix must be square of side 2^" +
                                std::to_string(n_qubits_));
  }
  const double herm_defect =
      (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > tol::kHermitian) {
    throw std::invalid_argument("matrix is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  const double trace_defect = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  if (trace_defect > tol::kNorm) {
    throw std::invalid_argument("trace deviates from 1 by " +
                                std::to_string(trace_defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < tol::kPsdFloor) {
    throw std::invalid_argument(
        "matrix has eigenvalue " +
        std::to_string(solver.eigenvalues().minCoeff()) +
        " below the PSD floor");
  }
}

QubitCut::QubitCut(int n_qubits, std::vector<int> side_a)
    : n_qubits_(n_qubits), side_a_(sorted_copy(std::move(side_a))) {
  check_qubit_count(n_qubits_);
  check_qubit_list(side_a_, n_qubits_, "cut");
  if (side_a_.size() >= static_cast<std::size_t>(n_qubits_)) {
    throw std::invalid_argument("cut side A must be a proper subset");
  }
}

std::vector<int> QubitCut::side_b() const {
  return complement_of(side_a_, n_qubits_);
}

Partition::Partition(int n_qubits, int focus, std::vector<Block> blocks)
    : n_qubits_(n_qubits), focus_(focus), blocks_(std::move(blocks)) {
  check_qubit_count(n_qubits_);
  if (focus_ < 0 || focus_ >= n_qubits_) {
    throw std::invalid_argument("focus qubit out of range");
  }
  std::vector<bool> seen(n_qubits_, false);
  seen[focus_] = true;
  for (auto& [name, qubits] : blocks_) {
    if (name.empty()) {
      throw std::invalid_argument("block name must be nonempty");
    }
    if (qubits.empty()) {
      throw std::invalid_argument("block '" + name + "' is empty");
    }
    std::sort(qubits.begin(), qubits.end());
    for (int q : qubits) {
      if (q < 0 || q >= n_qubits_) {
        throw std::invalid_argument("block '" + name +
                                    "' has out-of-range qubit");
      }
      if (seen[q]) {
        throw std::invalid_argument("qubit " + std::to_string(q) +
                                    " assigned twice in partition");
      }
      seen[q] = true;
    }
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks_.size(); ++j) {
      if (blocks_[i].first == blocks_[j].first) {
        throw std::invalid_argument("duplicate block name '" +
                                    blocks_[i].first + "'");
      }
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw std::invalid_argument("partition blocks must cover all qubits");
  }
}

Partition Partition::singletons(int n_qubits, int focus) {
  std::vector<Block> blocks;
  int label = 1;
  for (int q = 0; q < n_qubits; ++q) {
    if (q == focus) continue;
    blocks.emplace_back("B" + std::to_string(label++), std::vector<int>{q});
  }
  return Partition(n_qubits, focus, std::move(blocks));
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<int>& keep) {
  const int n = state.n_qubits();
  const std::vector<int> kept = sorted_copy(keep);
  check_qubit_list(kept, n, "keep");

  const std::vector<int> traced = complement_of(kept, n);
  const auto keep_base = subspace_bases(kept, n);
  const auto trace_base = subspace_bases(traced, n);
  const std::size_t dk = keep_base.size();
  const std::size_t dt = trace_base.size();

  const Matrix& m = state.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        sum += m(keep_base[a] | trace_base[t], keep_base[b] | trace_base[t]);
      }
      out(a, b) = sum;
    }
  }
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep) {
  const int n = state.n_qubits();
  const std::vector<int> kept = sorted_copy(keep);
  check_qubit_list(kept, n, "keep");

  const std::vector<int> traced = complement_of(kept, n);
  const auto keep_base = subspace_bases(kept, n);
  const auto trace_base = subspace_bases(traced, n);

  // rho_keep = M M^dagger with M(a, t) = amplitude at the interleaved index.
  Matrix reshaped(keep_base.size(), trace_base.size());
  for (std::size_t a = 0; a < keep_base.size(); ++a) {
    for (std::size_t t = 0; t < trace_base.size(); ++t) {
      reshaped(a, t) = state.amplitudes()(keep_base[a] | trace_base[t]);
    }
  }
  Matrix out = reshaped * reshaped.adjoint();
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

Matrix partial_transpose(const DensityMatrix& state,
                         const std::vector<int>& on) {
  return partial_transpose(state.matrix(), state.n_qubits(), on);
}

Matrix partial_transpose(const Matrix& m, int n_qubits,
                         const std::vector<int>& on) {
  const int n = n_qubits;
  check_qubit_count(n);
  if (m.rows() != m.cols() || m.rows() != (Eigen::Index(1) << n)) {
    throw std::invalid_argument("matrix must be square of side 2^n");
  }
  const std::vector<int> flipped = sorted_copy(on);
  check_qubit_list(flipped, n, "transpose");

  std::uint64_t mask = 0;
  for (int q : flipped) mask |= qubit_mask(q, n);

  const Eigen::Index dim = m.rows();
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      // Swap the masked bits between row and column index.
      const std::uint64_t d =
          (static_cast<std::uint64_t>(i) ^ static_cast<std::uint64_t>(j)) &
          mask;
      out(i, j) = m(i ^ d, j ^ d);
    }
  }
  return out;
}

Matrix realign(const DensityMatrix& state, const QubitCut& cut) {
  if (cut.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }
  const int n = state.n_qubits();
  const auto abase = subspace_bases(cut.side_a(), n);
  const auto bbase = subspace_bases(cut.side_b(), n);
  const std::size_t da = abase.size();
  const std::size_t db = bbase.size();

  const Matrix& m = state.matrix();
  Matrix out(da * da, db * db);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
          out(i * da + j, k * db + l) = m(abase[i] | bbase[k],
                                          abase[j] | bbase[l]);
        }
      }
    }
  }
  return out;
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

std::pair<RealVector, Matrix> eigh(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("eigh requires a square matrix");
  }
  const double herm_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > tol::kHermitian) {
    throw std::invalid_argument("eigh input is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index dim = m.rows();
  RealVector values(dim);
  Matrix vectors(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    values(i) = solver.eigenvalues()(dim - 1 - i);
    vectors.col(i) = solver.eigenvectors().col(dim - 1 - i);
  }
  return {std::move(values), std::move(vectors)};
}

}  // namespace tangle
