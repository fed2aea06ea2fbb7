#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tangle/common.hpp"
#include "tangle/qstate.hpp"

namespace tangle {

// Raised when a state family degenerates (all relevant amplitudes zero) and
// no renormalized spec exists.
class DegenerateSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Single-excitation state a|10...0> + sum_j b_j|0..1_j..0> over n+1 qubits,
// with n = b.size(). Amplitudes are complex; every downstream formula uses
// squared magnitudes only.
struct WClassSpec {
  Complex a;
  std::vector<Complex> b;

  int n_qubits() const { return static_cast<int>(b.size()) + 1; }
  double excitation_weight() const;  // |a|^2
  double tail_weight() const;        // sum_j |b_j|^2
  void validate() const;
};

// Mixture p |W><W| + (1-p) |0...0><0...0|.
struct MixedFamilySpec {
  WClassSpec w;
  double p = 1.0;

  void validate() const;
};

// W-class state with the non-focus qubits grouped into named blocks.
struct PartitionedWBlock {
  std::string name;
  std::vector<Complex> amplitudes;
};

struct PartitionedWSpec {
  Complex a_tilde;
  std::vector<PartitionedWBlock> blocks;

  int n_qubits() const;
  void validate() const;
};

// Weighted list of pure states mixing back to a target density matrix.
struct Ensemble {
  std::vector<std::pair<double, PureState>> members;

  int n_qubits() const;
  DensityMatrix mix() const;
  Matrix mix_matrix() const;  // same, without the DensityMatrix validation
  void validate() const;
};

PureState w_class(const WClassSpec& spec);

DensityMatrix mixed_family(const MixedFamilySpec& spec);

// Decomposition r/3 * sum_k |psi^k><psi^k| + (1-r)|0...0><0...0| with
// |psi^k> = sqrt(q)|W> + sqrt(1-q) w^k |0...0>, w = exp(2 pi i / 3) and
// q = p / r. The default r = 1 gives exactly three equal-weight members and
// realizes the minimal average tangle for every p.
Ensemble trial_ensemble(const MixedFamilySpec& spec, double r = 1.0);

std::pair<PureState, Partition> w_partitioned(const PartitionedWSpec& spec);

// Reduced state of {focus} + block is again a mixed-family state: returns
// p = |a~|^2 + sum_block |b~|^2 with amplitudes renormalized by sqrt(p).
MixedFamilySpec reduced_block_analytic(const PartitionedWSpec& spec,
                                       const std::string& block);

// Two-qubit marginal of the mixed family onto {focus, pair_index}: also a
// mixed-family state. The |00><00| weight works out to
// (1-p) + p * sum_{k != j} |b_k|^2, keeping the trace exactly 1.
MixedFamilySpec reduced_pair_analytic(const MixedFamilySpec& spec,
                                      int pair_index);

PureState ghz(int n_qubits);

PureState random_pure(int n_qubits, Rng& rng);
PureState random_pure(int n_qubits, std::uint64_t seed);

DensityMatrix random_mixed(int n_qubits, int rank, Rng& rng);
DensityMatrix random_mixed(int n_qubits, int rank, std::uint64_t seed);

// Haar-distributed unitary (Ginibre + QR with phase fixing).
Matrix random_unitary(int dim, Rng& rng);

// Random normalized W-class spec with n tail amplitudes.
WClassSpec random_w_class_spec(int n, Rng& rng);

// Random normalized partitioned spec with the given block sizes.
PartitionedWSpec random_partitioned_spec(const std::vector<int>& block_sizes,
                                         Rng& rng);

}  // namespace tangle
