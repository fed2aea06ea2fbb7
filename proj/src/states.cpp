#include "tangle/states.hpp"

#include <algorithm>
#include <cmath>

namespace tangle {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::uint64_t excitation_index(int qubit, int n_qubits) {
  return qubit_mask(qubit, n_qubits);
}

}  // namespace

double WClassSpec::excitation_weight() const { return std::norm(a); }

double WClassSpec::tail_weight() const {
  double sum = 0.0;
  for (const Complex& bj : b) sum += std::norm(bj);
  return sum;
}

void WClassSpec::validate() const {
  if (b.empty()) {
    throw std::invalid_argument("W-class spec needs at least one b amplitude");
  }
  if (n_qubits() > kMaxQubits) {
    throw std::invalid_argument("W-class spec exceeds the qubit cap");
  }
  const double total = excitation_weight() + tail_weight();
  if (std::abs(total - 1.0) > tol::kNorm) {
    throw std::invalid_argument("W-class amplitudes have squared norm " +
                                std::to_string(total) + ", expected 1");
  }
}

void MixedFamilySpec::validate() const {
  w.validate();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("mixing probability p must lie in [0, 1]");
  }
}

int PartitionedWSpec::n_qubits() const {
  int total = 1;
  for (const auto& block : blocks) {
    total += static_cast<int>(block.amplitudes.size());
  }
  return total;
}

void PartitionedWSpec::validate() const {
  if (blocks.empty()) {
    throw std::invalid_argument("partitioned spec needs at least one block");
  }
  double total = std::norm(a_tilde);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].name.empty()) {
      throw std::invalid_argument("block name must be nonempty");
    }
    if (blocks[i].amplitudes.empty()) {
      throw std::invalid_argument("block '" + blocks[i].name +
                                  "' must hold at least one qubit");
    }
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[i].name == blocks[j].name) {
        throw std::invalid_argument("duplicate block name '" +
                                    blocks[i].name + "'");
      }
    }
    for (const Complex& amp : blocks[i].amplitudes) total += std::norm(amp);
  }
  if (n_qubits() > kMaxQubits) {
    throw std::invalid_argument("partitioned spec exceeds the qubit cap");
  }
  if (std::abs(total - 1.0) > tol::kNorm) {
    throw std::invalid_argument("partitioned amplitudes have squared norm " +
                                std::to_string(total) + ", expected 1");
  }
}

int Ensemble::n_qubits() const {
  if (members.empty()) {
    throw std::invalid_argument("ensemble is empty");
  }
  return members.front().second.n_qubits();
}

Matrix Ensemble::mix_matrix() const {
  const Eigen::Index dim = members.front().second.dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& [weight, state] : members) {
    sum.noalias() +=
        weight * (state.amplitudes() * state.amplitudes().adjoint());
  }
  return sum;
}

DensityMatrix Ensemble::mix() const {
  return DensityMatrix(n_qubits(), mix_matrix());
}

void Ensemble::validate() const {
  if (members.empty()) {
    throw std::invalid_argument("ensemble is empty");
  }
  const int n = members.front().second.n_qubits();
  double total = 0.0;
  for (const auto& [weight, state] : members) {
    if (weight <= 0.0) {
      throw std::invalid_argument("ensemble weights must be positive");
    }
    if (state.n_qubits() != n) {
      throw std::invalid_argument("ensemble members differ in qubit count");
    }
    total += weight;
  }
  if (std::abs(total - 1.0) > tol::kNorm) {
    throw std::invalid_argument("ensemble weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
}

PureState w_class(const WClassSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits();
  Vector amps = Vector::Zero(Eigen::Index(1) << n);
  amps(excitation_index(0, n)) = spec.a;
  for (std::size_t j = 0; j < spec.b.size(); ++j) {
    amps(excitation_index(static_cast<int>(j) + 1, n)) = spec.b[j];
  }
  return PureState(n, std::move(amps));
}

DensityMatrix mixed_family(const MixedFamilySpec& spec) {
  spec.validate();
  const PureState w = w_class(spec.w);
  Matrix m = spec.p * (w.amplitudes() * w.amplitudes().adjoint());
  m(0, 0) += 1.0 - spec.p;
  return DensityMatrix(w.n_qubits(), std::move(m));
}

Ensemble trial_ensemble(const MixedFamilySpec& spec, double r) {
  spec.validate();
  if (!(r > 0.0 && r <= 1.0) || r + tol::kNorm < spec.p) {
    throw std::invalid_argument("trial parameter r must satisfy p <= r <= 1");
  }
  const double q = std::min(spec.p / r, 1.0);
  const PureState w = w_class(spec.w);
  const int n = w.n_qubits();

  Ensemble ensemble;
  for (int k = 0; k < 3; ++k) {
    Vector amps = std::sqrt(q) * w.amplitudes();
    const Complex omega_k = std::polar(1.0, kTwoPi * k / 3.0);
    amps(0) += std::sqrt(1.0 - q) * omega_k;
    ensemble.members.emplace_back(r / 3.0, PureState(n, std::move(amps)));
  }
  if (r < 1.0) {
    Vector zero = Vector::Zero(w.dim());
    zero(0) = 1.0;
    ensemble.members.emplace_back(1.0 - r, PureState(n, std::move(zero)));
  }
  ensemble.validate();
  return ensemble;
}

std::pair<PureState, Partition> w_partitioned(const PartitionedWSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits();
  Vector amps = Vector::Zero(Eigen::Index(1) << n);
  amps(excitation_index(0, n)) = spec.a_tilde;

  std::vector<Partition::Block> blocks;
  int next_qubit = 1;
  for (const auto& block : spec.blocks) {
    std::vector<int> qubits;
    for (const Complex& amp : block.amplitudes) {
      amps(excitation_index(next_qubit, n)) = amp;
      qubits.push_back(next_qubit++);
    }
    blocks.emplace_back(block.name, std::move(qubits));
  }
  return {PureState(n, std::move(amps)),
          Partition(n, 0, std::move(blocks))};
}

MixedFamilySpec reduced_block_analytic(const PartitionedWSpec& spec,
                                       const std::string& block) {
  spec.validate();
  const PartitionedWBlock* found = nullptr;
  for (const auto& candidate : spec.blocks) {
    if (candidate.name == block) {
      found = &candidate;
      break;
    }
  }
  if (found == nullptr) {
    throw std::invalid_argument("no block named '" + block + "'");
  }

  double p = std::norm(spec.a_tilde);
  for (const Complex& amp : found->amplitudes) p += std::norm(amp);
  if (p == 0.0) {
    throw DegenerateSpecError(
        "focus and block amplitudes are all zero; reduced family undefined");
  }

  const double scale = 1.0 / std::sqrt(p);
  WClassSpec reduced;
  reduced.a = spec.a_tilde * scale;
  reduced.b.reserve(found->amplitudes.size());
  for (const Complex& amp : found->amplitudes) reduced.b.push_back(amp * scale);
  return MixedFamilySpec{std::move(reduced), p};
}

MixedFamilySpec reduced_pair_analytic(const MixedFamilySpec& spec,
                                      int pair_index) {
  spec.validate();
  const int n_tail = static_cast<int>(spec.w.b.size());
  if (pair_index < 1 || pair_index > n_tail) {
    throw std::invalid_argument("pair index must name one of b_1..b_n");
  }
  const Complex bj = spec.w.b[pair_index - 1];
  const double share = std::norm(spec.w.a) + std::norm(bj);
  if (share == 0.0) {
    throw DegenerateSpecError(
        "focus and pair amplitudes are both zero; reduced family undefined");
  }
  const double scale = 1.0 / std::sqrt(share);
  WClassSpec reduced;
  reduced.a = spec.w.a * scale;
  reduced.b = {bj * scale};
  return MixedFamilySpec{std::move(reduced), spec.p * share};
}

PureState ghz(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("ghz qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Vector amps = Vector::Zero(dim);
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(dim - 1) = 1.0 / std::sqrt(2.0);
  return PureState(n_qubits, std::move(amps));
}

PureState random_pure(int n_qubits, Rng& rng) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("random_pure qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  Vector amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) amps(i) = rng.normal_complex();
  amps /= amps.norm();
  return PureState(n_qubits, std::move(amps));
}

PureState random_pure(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(n_qubits, rng);
}

DensityMatrix random_mixed(int n_qubits, int rank, Rng& rng) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("random_mixed qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << n_qubits;
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_mixed rank must lie in [1, 2^n]");
  }
  Matrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index k = 0; k < rank; ++k) g(i, k) = rng.normal_complex();
  }
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix random_mixed(int n_qubits, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_mixed(n_qubits, rank, rng);
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.normal_complex();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (int j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= (mag > 0.0) ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

WClassSpec random_w_class_spec(int n, Rng& rng) {
  if (n < 1) {
    throw std::invalid_argument("spec needs at least one b amplitude");
  }
  Vector raw(n + 1);
  for (int i = 0; i <= n; ++i) raw(i) = rng.normal_complex();
  raw /= raw.norm();
  WClassSpec spec;
  spec.a = raw(0);
  spec.b.assign(raw.data() + 1, raw.data() + n + 1);
  return spec;
}

PartitionedWSpec random_partitioned_spec(const std::vector<int>& block_sizes,
                                         Rng& rng) {
  int total = 1;
  for (int size : block_sizes) {
    if (size < 1) throw std::invalid_argument("block sizes must be >= 1");
    total += size;
  }
  Vector raw(total);
  for (int i = 0; i < total; ++i) raw(i) = rng.normal_complex();
  raw /= raw.norm();

  PartitionedWSpec spec;
  spec.a_tilde = raw(0);
  int cursor = 1;
  char name = 'B';
  for (int size : block_sizes) {
    PartitionedWBlock block;
    block.name = std::string(1, name++);
    block.amplitudes.assign(raw.data() + cursor, raw.data() + cursor + size);
    cursor += size;
    spec.blocks.push_back(std::move(block));
  }
  return spec;
}

}  // namespace tangle
