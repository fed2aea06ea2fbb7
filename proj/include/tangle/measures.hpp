#pragma once

#include <string>

#include "tangle/qstate.hpp"
#include "tangle/states.hpp"

namespace tangle {

enum class MeasureKind { concurrence, tangle, negativity, realignment };

std::string measure_kind_name(MeasureKind kind);
MeasureKind measure_kind_from_name(const std::string& name);

// A measure value carries its cut so reports stay self-describing.
struct MeasureValue {
  MeasureKind kind;
  double value;
  QubitCut cut;
};

// Concurrence of a pure state across a cut: 2 sqrt(det rho_A) when side A is
// a single qubit; sqrt(2 (1 - tr rho_A^2)) for larger side A (the two agree
// whenever rho_A is 2x2).
MeasureValue pure_concurrence(const PureState& state, const QubitCut& cut);

// Squared concurrence.
MeasureValue pure_tangle(const PureState& state, const QubitCut& cut);

// Two-qubit mixed-state concurrence by the spin-flip procedure:
// rho~ = (sy x sy) conj(rho) (sy x sy), lambda_i the descending square roots
// of the eigenvalues of rho rho~, C = max(0, l1 - l2 - l3 - l4).
MeasureValue wootters_concurrence(const DensityMatrix& rho);

// ||rho^T_A||_1 - 1, clamped at zero. No 1/2 prefactor: a Bell pair scores 1
// and C >= N holds with unit constant for a qubit-sided cut.
MeasureValue negativity(const DensityMatrix& rho, const QubitCut& cut);

// max(0, ||realign(rho)||_1 - 1).
MeasureValue realignment_measure(const DensityMatrix& rho,
                                 const QubitCut& cut);

// Closed-form tangle of the mixed family across the focus cut:
// 4 p^2 |a|^2 sum_j |b_j|^2.
MeasureValue mixed_family_tangle(const MixedFamilySpec& spec);

}  // namespace tangle
