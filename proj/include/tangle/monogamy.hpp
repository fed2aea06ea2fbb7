#pragma once

#include <string>
#include <vector>

#include "tangle/convexroof.hpp"
#include "tangle/measures.hpp"
#include "tangle/qstate.hpp"
#include "tangle/states.hpp"

namespace tangle {

enum class Verdict { holds, saturated, violated, inconclusive };

std::string verdict_name(Verdict verdict);

// A report quantity: exact closed-form values carry a zero-width certified
// interval, roof quantities carry their bracket.
struct BoundedValue {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = true;

  static BoundedValue exact(double value) {
    return {value, value, value, true};
  }
  static BoundedValue from_bracket(const RoofBracket& bracket) {
    return {bracket.upper, bracket.lower, bracket.upper, bracket.certified};
  }
};

struct ReportTerm {
  std::string label;
  BoundedValue value;
};

// Inequality-check outcome. slack = lhs - sum(rhs) at the point estimates;
// slack_lower/slack_upper bound it through the certified intervals. A
// violation verdict is only issued when every interval is certified; the
// saturation threshold used is recorded alongside.
struct MonogamyReport {
  std::string subject;
  ReportTerm lhs;
  std::vector<ReportTerm> rhs;
  double slack = 0.0;
  double slack_lower = 0.0;
  double slack_upper = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double saturation_tolerance = tol::kSaturation;

  double rhs_sum() const;
};

// tau(A : rest) >= sum_j C^2(rho_{A,j}) on a pure state; both sides in
// closed form.
MonogamyReport check_ckw(const PureState& state, int focus);

// Same inequality for the mixed family: certified bracket on the left,
// 4 p^2 |a|^2 |b_j|^2 terms on the right. Saturates for every spec.
MonogamyReport check_ckw_mixed(const MixedFamilySpec& spec,
                               const RoofConfig& config = {});

// Arbitrary-partition inequality on a pure state:
// tau(A : everything) >= sum_blocks tau(A : block), each block term a
// certified roof bracket of the reduced state.
MonogamyReport check_generalized(const PureState& state,
                                 const Partition& partition,
                                 const RoofConfig& config = {});

// Same check via the analytic route available for partitioned W-class
// states: every block marginal is a mixed-family state whose tangle is
// closed-form.
MonogamyReport check_generalized_analytic(const PartitionedWSpec& spec);

// Residual (higher-) tangle: the slack interval of check_generalized. For a
// three-qubit pure state with singleton blocks this is the three-tangle.
BoundedValue residual_tangle(const PureState& state,
                             const Partition& partition,
                             const RoofConfig& config = {});

// Squared-measure monogamy (negativity or realignment): measures are
// closed-form on the reduced states, so no roof is involved.
MonogamyReport check_measure_monogamy(const PureState& state,
                                      const Partition& partition,
                                      MeasureKind kind);

// Randomized search for violations of the generalized inequality. Reports
// come back sorted by slack, smallest first; a certified negative slack is a
// falsification finding.
struct ConjectureSearchResult {
  std::vector<MonogamyReport> reports;  // sorted by ascending slack
  int violations = 0;
  int inconclusive = 0;
};

enum class SampleSource { haar, w_class };

ConjectureSearchResult conjecture_search(
    int n_qubits, const std::vector<std::vector<int>>& partition_shapes,
    int samples, const RoofConfig& config, std::uint64_t seed,
    SampleSource source = SampleSource::haar);

// Partition with focus 0 and consecutive blocks of the given sizes.
Partition partition_from_shape(int n_qubits,
                               const std::vector<int>& block_sizes);

}  // namespace tangle
