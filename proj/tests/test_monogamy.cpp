#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tangle/monogamy.hpp"

using namespace tangle;

namespace {

WClassSpec uniform_spec(int n) {
  WClassSpec spec;
  spec.a = 1.0 / std::sqrt(n + 1.0);
  spec.b.assign(n, 1.0 / std::sqrt(n + 1.0));
  return spec;
}

PureState basis_zero(int n) {
  Vector amps = Vector::Zero(Eigen::Index(1) << n);
  amps(0) = 1.0;
  return PureState(n, amps);
}

RoofConfig fast_config(std::uint64_t seed) {
  RoofConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("single-excitation states saturate the pairwise inequality") {
  Rng rng(70);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState state = w_class(random_w_class_spec(2 + trial % 4, rng));
    const MonogamyReport report = check_ckw(state, 0);
    CHECK(report.verdict == Verdict::saturated);
    CHECK(std::abs(report.slack) < 1e-12);
  }
}

TEST_CASE("GHZ states carry all tangle in the full cut") {
  const MonogamyReport report = check_ckw(ghz(3), 0);
  CHECK(report.lhs.value.point == doctest::Approx(1.0));
  CHECK(report.rhs_sum() == doctest::Approx(0.0));
  CHECK(report.slack == doctest::Approx(1.0));
  CHECK(report.verdict == Verdict::holds);
}

TEST_CASE("product states saturate trivially") {
  const MonogamyReport report = check_ckw(basis_zero(4), 1);
  CHECK(report.lhs.value.point < 1e-12);
  CHECK(report.verdict == Verdict::saturated);
}

TEST_CASE("check_ckw argument validation") {
  CHECK_THROWS_AS(check_ckw(ghz(3), 5), std::invalid_argument);
  CHECK_THROWS_AS(check_ckw(ghz(3), -1), std::invalid_argument);
}

TEST_CASE("mixed family saturates with a certified left side") {
  const MixedFamilySpec spec{uniform_spec(2), 0.6};
  const MonogamyReport report = check_ckw_mixed(spec, fast_config(1));
  CHECK(report.verdict == Verdict::saturated);
  CHECK(std::abs(report.lhs.value.point - 8.0 / 25.0) < 1e-6);
  CHECK(std::abs(report.rhs_sum() - 8.0 / 25.0) < 1e-12);
  CHECK(report.lhs.value.certified);
}

TEST_CASE("mixed family at p = 0 saturates at zero") {
  const MonogamyReport report =
      check_ckw_mixed({uniform_spec(2), 0.0}, fast_config(2));
  CHECK(report.verdict == Verdict::saturated);
  CHECK(std::abs(report.lhs.value.point) < 1e-9);
}

TEST_CASE("random mixed-family specs all saturate") {
  Rng rng(71);
  for (int trial = 0; trial < 12; ++trial) {
    const MixedFamilySpec spec{random_w_class_spec(2 + trial % 3, rng),
                               (1 + trial % 10) / 10.0};
    const MonogamyReport report = check_ckw_mixed(spec, fast_config(3 + trial));
    CHECK(report.verdict == Verdict::saturated);
    CHECK(std::abs(report.slack) < 1e-6);
  }
}

TEST_CASE("five-qubit example saturates under the two-block partition") {
  const PureState state = w_class(uniform_spec(4));
  const Partition partition(5, 0, {{"B", {1, 2}}, {"C", {3, 4}}});
  const MonogamyReport report =
      check_generalized(state, partition, fast_config(4));
  CHECK(report.verdict == Verdict::saturated);
  CHECK(std::abs(report.lhs.value.point - 16.0 / 25.0) < 1e-12);
  REQUIRE(report.rhs.size() == 2);
  for (const ReportTerm& term : report.rhs) {
    CHECK(std::abs(term.value.point - 8.0 / 25.0) < 1e-6);
    CHECK(term.value.certified);
  }
}

TEST_CASE("singleton blocks reduce the generalized check to check_ckw") {
  Rng rng(72);
  const PureState state = random_pure(3, rng);
  const MonogamyReport general = check_generalized(
      state, Partition::singletons(3, 0), fast_config(5));
  const MonogamyReport pairwise = check_ckw(state, 0);
  CHECK(std::abs(general.lhs.value.point - pairwise.lhs.value.point) < 1e-9);
  REQUIRE(general.rhs.size() == pairwise.rhs.size());
  for (std::size_t j = 0; j < general.rhs.size(); ++j) {
    CHECK(std::abs(general.rhs[j].value.point -
                   pairwise.rhs[j].value.point) < 1e-9);
  }
  CHECK(std::abs(general.slack - pairwise.slack) < 1e-9);
}

TEST_CASE("analytic route saturates for random partitioned specs") {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    const std::vector<int> sizes = (trial % 2 == 0)
                                       ? std::vector<int>{1, 2}
                                       : std::vector<int>{2, 2, 1};
    const MonogamyReport report =
        check_generalized_analytic(random_partitioned_spec(sizes, rng));
    CHECK(report.verdict == Verdict::saturated);
    CHECK(std::abs(report.slack) < 1e-6);
  }
}

TEST_CASE("roof route agrees with the analytic route on partitioned states") {
  Rng rng(74);
  const PartitionedWSpec spec = random_partitioned_spec({2, 1}, rng);
  const auto [state, partition] = w_partitioned(spec);
  const MonogamyReport roof =
      check_generalized(state, partition, fast_config(6));
  const MonogamyReport analytic = check_generalized_analytic(spec);
  CHECK(std::abs(roof.lhs.value.point - analytic.lhs.value.point) < 1e-12);
  REQUIRE(roof.rhs.size() == analytic.rhs.size());
  for (std::size_t j = 0; j < roof.rhs.size(); ++j) {
    CHECK(std::abs(roof.rhs[j].value.point - analytic.rhs[j].value.point) <
          1e-6);
  }
  CHECK(roof.verdict == Verdict::saturated);
}

TEST_CASE("coarse blocks dominate each contained term") {
  Rng rng(75);
  for (int trial = 0; trial < 5; ++trial) {
    const PureState state = random_pure(4, rng);
    const MonogamyReport report = check_generalized(
        state, partition_from_shape(4, {1, 2}), fast_config(7 + trial));
    for (const ReportTerm& term : report.rhs) {
      CHECK(report.lhs.value.point >= term.value.point - 1e-9);
    }
  }
}

TEST_CASE("residual tangle of single-excitation states vanishes") {
  Rng rng(76);
  const PureState state = w_class(random_w_class_spec(3, rng));
  const BoundedValue residual =
      residual_tangle(state, Partition::singletons(4, 0), fast_config(8));
  CHECK(std::abs(residual.point) < 1e-6);
}

TEST_CASE("residual tangle of the GHZ state is one") {
  const BoundedValue residual =
      residual_tangle(ghz(3), Partition::singletons(3, 0), fast_config(9));
  CHECK(residual.point == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("p = 1 family states have zero residual under any partition") {
  Rng rng(77);
  const WClassSpec w = random_w_class_spec(3, rng);
  const PureState state = w_class(w);
  for (const auto& shape :
       {std::vector<int>{1, 2}, std::vector<int>{3}, std::vector<int>{2, 1}}) {
    const BoundedValue residual =
        residual_tangle(state, partition_from_shape(4, shape),
                        fast_config(10));
    CHECK(std::abs(residual.point) < 1e-6);
  }
}

TEST_CASE("squared-measure monogamy holds on random three-qubit states") {
  Rng rng(78);
  const Partition partition = Partition::singletons(3, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState state = random_pure(3, rng);
    for (const MeasureKind kind :
         {MeasureKind::negativity, MeasureKind::realignment}) {
      const MonogamyReport report =
          check_measure_monogamy(state, partition, kind);
      CHECK(report.slack >= -1e-9);
      CHECK(report.verdict != Verdict::violated);
      CHECK(report.verdict != Verdict::inconclusive);
    }
  }
}

TEST_CASE("product states give a trivial measure-monogamy report") {
  const MonogamyReport report = check_measure_monogamy(
      basis_zero(3), Partition::singletons(3, 0), MeasureKind::negativity);
  CHECK(report.lhs.value.point < 1e-12);
  CHECK(report.verdict == Verdict::saturated);
}

TEST_CASE("uniform three-qubit state has strictly positive negativity "
          "residual") {
  const PureState state = w_class(uniform_spec(2));
  const MonogamyReport report = check_measure_monogamy(
      state, Partition::singletons(3, 0), MeasureKind::negativity);
  CHECK(report.slack > 1e-3);
  CHECK(report.verdict == Verdict::holds);
}

TEST_CASE("measure monogamy rejects tangle as a kind") {
  CHECK_THROWS_AS(check_measure_monogamy(ghz(3), Partition::singletons(3, 0),
                                         MeasureKind::tangle),
                  std::invalid_argument);
}

TEST_CASE("conjecture search on single-excitation samples saturates") {
  const ConjectureSearchResult result = conjecture_search(
      4, {{1, 2}}, 5, fast_config(11), 2024, SampleSource::w_class);
  REQUIRE(result.reports.size() == 5);
  CHECK(result.violations == 0);
  for (const MonogamyReport& report : result.reports) {
    CHECK(std::abs(report.slack) < 1e-6);
  }
}

TEST_CASE("conjecture search returns sorted reports and honors samples = 0") {
  CHECK(conjecture_search(4, {{1, 2}}, 0, fast_config(12), 7).reports.empty());

  const ConjectureSearchResult result =
      conjecture_search(3, {{1, 1}}, 6, fast_config(13), 7);
  REQUIRE(result.reports.size() == 6);
  for (std::size_t i = 1; i < result.reports.size(); ++i) {
    CHECK(result.reports[i - 1].slack <= result.reports[i].slack);
  }
  CHECK(result.violations == 0);

  CHECK_THROWS_AS(conjecture_search(9, {{8}}, 1, fast_config(14), 7),
                  std::invalid_argument);
}

TEST_CASE("verdict names are total") {
  CHECK(verdict_name(Verdict::holds) == "holds");
  CHECK(verdict_name(Verdict::saturated) == "saturated");
  CHECK(verdict_name(Verdict::violated) == "violated");
  CHECK(verdict_name(Verdict::inconclusive) == "inconclusive");
}
