#include "tangle/monogamy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tangle {

namespace {

// Verdict rules, in order: a certified near-zero slack is saturation; an
// interval that stays nonnegative within tolerance holds; a certified
// negative slack is a violation; anything straddling is inconclusive.
Verdict classify(double slack, double slack_lower, bool all_certified,
                 double saturation_tolerance) {
  if (all_certified && std::abs(slack) < saturation_tolerance) {
    return Verdict::saturated;
  }
  if (slack_lower >= -tol::kSlack) {
    return Verdict::holds;
  }
  if (all_certified && slack <= -saturation_tolerance) {
    return Verdict::violated;
  }
  return Verdict::inconclusive;
}

void finalize(MonogamyReport& report) {
  double sum_point = 0.0, sum_lower = 0.0, sum_upper = 0.0;
  bool all_certified = report.lhs.value.certified;
  for (const ReportTerm& term : report.rhs) {
    sum_point += term.value.point;
    sum_lower += term.value.lower;
    sum_upper += term.value.upper;
    all_certified = all_certified && term.value.certified;
  }
  report.slack = report.lhs.value.point - sum_point;
  report.slack_lower = report.lhs.value.lower - sum_upper;
  report.slack_upper = report.lhs.value.upper - sum_lower;
  report.verdict = classify(report.slack, report.slack_lower, all_certified,
                            report.saturation_tolerance);
}

std::vector<int> focus_and_block(int focus, const std::vector<int>& block) {
  std::vector<int> keep = block;
  keep.push_back(focus);
  std::sort(keep.begin(), keep.end());
  return keep;
}

int position_in(const std::vector<int>& keep, int qubit) {
  return static_cast<int>(std::find(keep.begin(), keep.end(), qubit) -
                          keep.begin());
}

}  // namespace

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds:
      return "holds";
    case Verdict::saturated:
      return "saturated";
    case Verdict::violated:
      return "violated";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  throw std::logic_error("unknown verdict");
}

double MonogamyReport::rhs_sum() const {
  double sum = 0.0;
  for (const ReportTerm& term : rhs) sum += term.value.point;
  return sum;
}

MonogamyReport check_ckw(const PureState& state, int focus) {
  const int n = state.n_qubits();
  if (n < 2) {
    throw std::invalid_argument("need at least two qubits");
  }
  if (focus < 0 || focus >= n) {
    throw std::invalid_argument("focus qubit out of range");
  }

  MonogamyReport report;
  report.subject = "ckw focus " + std::to_string(focus);
  const QubitCut cut(n, {focus});
  report.lhs = {"tau(A:rest)",
                BoundedValue::exact(pure_tangle(state, cut).value)};
  const DensityMatrix rho = state.to_density();
  for (int j = 0; j < n; ++j) {
    if (j == focus) continue;
    const auto keep = focus_and_block(focus, {j});
    const double c = wootters_concurrence(partial_trace(rho, keep)).value;
    report.rhs.push_back({"C^2(A,q" + std::to_string(j) + ")",
                          BoundedValue::exact(c * c)});
  }
  finalize(report);
  return report;
}

MonogamyReport check_ckw_mixed(const MixedFamilySpec& spec,
                               const RoofConfig& config) {
  spec.validate();
  MonogamyReport report;
  report.subject = "ckw mixed family p=" + std::to_string(spec.p);
  report.saturation_tolerance = config.certificate_tolerance;

  const DensityMatrix rho = mixed_family(spec);
  report.lhs = {"tau(A:rest)",
                BoundedValue::from_bracket(certified_tangle(rho, 0, config))};
  for (std::size_t j = 0; j < spec.w.b.size(); ++j) {
    const double term = 4.0 * spec.p * spec.p * spec.w.excitation_weight() *
                        std::norm(spec.w.b[j]);
    report.rhs.push_back({"C^2(A,q" + std::to_string(j + 1) + ")",
                          BoundedValue::exact(term)});
  }
  finalize(report);
  return report;
}

MonogamyReport check_generalized(const PureState& state,
                                 const Partition& partition,
                                 const RoofConfig& config) {
  if (partition.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("partition qubit count does not match state");
  }
  const int focus = partition.focus();

  MonogamyReport report;
  report.subject = "generalized focus " + std::to_string(focus);
  report.saturation_tolerance =
      std::max(tol::kSaturation, config.certificate_tolerance);

  const QubitCut cut(state.n_qubits(), {focus});
  report.lhs = {"tau(A:rest)",
                BoundedValue::exact(pure_tangle(state, cut).value)};

  const DensityMatrix rho = state.to_density();
  for (const auto& [name, qubits] : partition.blocks()) {
    const auto keep = focus_and_block(focus, qubits);
    const DensityMatrix reduced = partial_trace(rho, keep);
    const RoofBracket bracket =
        certified_tangle(reduced, position_in(keep, focus), config);
    report.rhs.push_back({"tau(A:" + name + ")",
                          BoundedValue::from_bracket(bracket)});
  }
  finalize(report);
  return report;
}

MonogamyReport check_generalized_analytic(const PartitionedWSpec& spec) {
  const auto [state, partition] = w_partitioned(spec);

  MonogamyReport report;
  report.subject = "generalized analytic";
  const QubitCut cut(state.n_qubits(), {partition.focus()});
  report.lhs = {"tau(A:rest)",
                BoundedValue::exact(pure_tangle(state, cut).value)};
  for (const auto& [name, qubits] : partition.blocks()) {
    const MixedFamilySpec reduced = reduced_block_analytic(spec, name);
    report.rhs.push_back({"tau(A:" + name + ")",
                          BoundedValue::exact(mixed_family_tangle(reduced)
                                                  .value)});
  }
  finalize(report);
  return report;
}

BoundedValue residual_tangle(const PureState& state,
                             const Partition& partition,
                             const RoofConfig& config) {
  const MonogamyReport report = check_generalized(state, partition, config);
  bool certified = report.lhs.value.certified;
  for (const ReportTerm& term : report.rhs) {
    certified = certified && term.value.certified;
  }
  return {report.slack, report.slack_lower, report.slack_upper, certified};
}

MonogamyReport check_measure_monogamy(const PureState& state,
                                      const Partition& partition,
                                      MeasureKind kind) {
  if (kind != MeasureKind::negativity && kind != MeasureKind::realignment) {
    throw std::invalid_argument(
        "measure monogamy is defined for negativity and realignment");
  }
  if (partition.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("partition qubit count does not match state");
  }
  const int focus = partition.focus();
  const auto measure = [&](const DensityMatrix& rho, const QubitCut& cut) {
    return kind == MeasureKind::negativity
               ? negativity(rho, cut).value
               : realignment_measure(rho, cut).value;
  };

  MonogamyReport report;
  report.subject = measure_kind_name(kind) + " monogamy focus " +
                   std::to_string(focus);
  const DensityMatrix rho = state.to_density();
  const QubitCut full_cut(state.n_qubits(), {focus});
  const double lhs = measure(rho, full_cut);
  report.lhs = {measure_kind_name(kind) + "^2(A:rest)",
                BoundedValue::exact(lhs * lhs)};
  for (const auto& [name, qubits] : partition.blocks()) {
    const auto keep = focus_and_block(focus, qubits);
    const DensityMatrix reduced = partial_trace(rho, keep);
    const QubitCut cut(static_cast<int>(keep.size()),
                       {position_in(keep, focus)});
    const double value = measure(reduced, cut);
    report.rhs.push_back({measure_kind_name(kind) + "^2(A:" + name + ")",
                          BoundedValue::exact(value * value)});
  }
  finalize(report);
  return report;
}

Partition partition_from_shape(int n_qubits,
                               const std::vector<int>& block_sizes) {
  std::vector<Partition::Block> blocks;
  int next = 1;
  char name = 'B';
  for (int size : block_sizes) {
    std::vector<int> qubits;
    for (int k = 0; k < size; ++k) qubits.push_back(next++);
    blocks.emplace_back(std::string(1, name++), std::move(qubits));
  }
  if (next != n_qubits) {
    throw std::invalid_argument("block sizes must cover the non-focus qubits");
  }
  return Partition(n_qubits, 0, std::move(blocks));
}

ConjectureSearchResult conjecture_search(
    int n_qubits, const std::vector<std::vector<int>>& partition_shapes,
    int samples, const RoofConfig& config, std::uint64_t seed,
    SampleSource source) {
  if (n_qubits > 8) {
    throw std::invalid_argument(
        "conjecture search is limited to 8 qubits (roof cost)");
  }
  if (samples < 0) {
    throw std::invalid_argument("sample count must be nonnegative");
  }
  std::vector<Partition> partitions;
  for (const auto& shape : partition_shapes) {
    partitions.push_back(partition_from_shape(n_qubits, shape));
  }

  ConjectureSearchResult result;
  for (int sample = 0; sample < samples; ++sample) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(sample)));
    const PureState state = source == SampleSource::haar
                                ? random_pure(n_qubits, rng)
                                : w_class(random_w_class_spec(n_qubits - 1,
                                                              rng));
    for (std::size_t shape = 0; shape < partitions.size(); ++shape) {
      MonogamyReport report =
          check_generalized(state, partitions[shape], config);
      report.subject = "sample " + std::to_string(sample) + " shape " +
                       std::to_string(shape);
      if (report.verdict == Verdict::violated) ++result.violations;
      if (report.verdict == Verdict::inconclusive) ++result.inconclusive;
      result.reports.push_back(std::move(report));
    }
  }
  std::stable_sort(result.reports.begin(), result.reports.end(),
                   [](const MonogamyReport& x, const MonogamyReport& y) {
                     return x.slack < y.slack;
                   });
  return result;
}

}  // namespace tangle
