#pragma once

#include <cstdint>

#include "tangle/measures.hpp"
#include "tangle/qstate.hpp"
#include "tangle/states.hpp"

namespace tangle {

// Search configuration for the decomposition optimizer. ensemble_size = 0
// picks min(r^2, r+2) for numerical rank r; explicit values must be >= r.
struct RoofConfig {
  int ensemble_size = 0;
  int restarts = 32;
  int max_iterations = 500;  // descent sweeps per restart
  double step_tolerance = 1e-10;
  double certificate_tolerance = tol::kCertificate;
  std::uint64_t seed = 1;

  void validate() const;
};

// Certified interval for a convex-roof tangle. `upper` is the average tangle
// of an explicitly constructed decomposition, `lower` the pairwise
// concurrence-squared sum; the true roof lies in between. The witness is the
// most compact near-optimal ensemble found; its average may sit above
// `upper` by at most 1e-9.
struct RoofBracket {
  double lower = 0.0;
  double upper = 0.0;
  Ensemble witness;
  bool certified = false;

  double gap() const { return upper - lower; }
};

// Result of the upper-bound search alone.
struct RoofUpperBound {
  double value = 0.0;
  Ensemble witness;
};

// sum_j p_j * tangle(phi_j) across the cut.
double ensemble_average_tangle(const Ensemble& ensemble, const QubitCut& cut);

// Ensemble induced by an m x r isometric mixer applied to the spectral
// decomposition: member j is proportional to sum_k mixer(j,k) sqrt(mu_k) v_k.
// Members below the zero-weight cutoff are dropped.
Ensemble decomposition_from_mixer(const DensityMatrix& rho,
                                  const Matrix& mixer);

// Minimizes the ensemble average tangle over isometric mixers by seeded
// restarts plus pairwise Givens-style descent. Deterministic per seed; the
// value never falls when restarts increase.
RoofUpperBound optimize_roof(const DensityMatrix& rho, const QubitCut& cut,
                             const RoofConfig& config);

// sum over the other qubits j of wootters_concurrence(rho_{focus,j})^2.
double ckw_lower_bound(const DensityMatrix& rho, int focus);

// Sandwich bracket [ckw_lower_bound, optimize_roof] across the focus cut.
RoofBracket certified_tangle(const DensityMatrix& rho, int focus,
                             const RoofConfig& config);

}  // namespace tangle
