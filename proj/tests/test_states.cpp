#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tangle/qstate.hpp"
#include "tangle/states.hpp"
#include "testsupport.hpp"

using namespace tangle;

namespace {

WClassSpec uniform_spec(int n) {
  WClassSpec spec;
  spec.a = 1.0 / std::sqrt(n + 1.0);
  spec.b.assign(n, 1.0 / std::sqrt(n + 1.0));
  return spec;
}

}  // namespace

TEST_CASE("w_class places amplitudes on single-excitation basis states") {
  WClassSpec spec;
  spec.a = 1.0 / std::sqrt(2.0);
  spec.b = {1.0 / std::sqrt(2.0)};
  const PureState state = w_class(spec);
  // (|10> + |01>)/sqrt(2)
  CHECK(std::abs(state.amplitudes()(2) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(state.amplitudes()(1) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(state.amplitudes()(0)) < 1e-12);
  CHECK(std::abs(state.amplitudes()(3)) < 1e-12);
}

TEST_CASE("uniform five-qubit state hits every weight-one basis label") {
  const PureState state = w_class(uniform_spec(4));
  int nonzero = 0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (std::abs(state.amplitudes()(i)) > 1e-14) {
      ++nonzero;
      CHECK(std::popcount(static_cast<unsigned>(i)) == 1);
      CHECK(std::abs(state.amplitudes()(i) - 1.0 / std::sqrt(5.0)) < 1e-12);
    }
  }
  CHECK(nonzero == 5);
}

TEST_CASE("separable edge: a = 1 gives |10...0> with zero tangle") {
  WClassSpec spec;
  spec.a = 1.0;
  spec.b = {0.0, 0.0};
  const PureState state = w_class(spec);
  CHECK(std::abs(state.amplitudes()(4) - 1.0) < 1e-12);
  // zero tangle downstream, not an error
  const Matrix marginal = partial_trace(state, {0}).matrix();
  const double det =
      (marginal(0, 0) * marginal(1, 1) - marginal(0, 1) * marginal(1, 0))
          .real();
  CHECK(std::abs(det) < 1e-14);
}

TEST_CASE("w_class rejects unnormalized specs") {
  WClassSpec bad;
  bad.a = 1.0;
  bad.b = {0.5};
  CHECK_THROWS_AS(w_class(bad), std::invalid_argument);
}

TEST_CASE("permuting b amplitudes permutes the qubits") {
  Rng rng(30);
  const WClassSpec spec = random_w_class_spec(3, rng);
  WClassSpec permuted = spec;
  std::swap(permuted.b[0], permuted.b[2]);  // swap qubits 1 and 3
  const PureState original = w_class(spec);
  const PureState swapped = w_class(permuted);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const std::uint64_t b1 = (i >> 2) & 1ULL, b3 = i & 1ULL;
    const std::uint64_t j = (i & ~5ULL) | (b3 << 2) | b1;
    CHECK(std::abs(original.amplitudes()(i) - swapped.amplitudes()(j)) <
          1e-14);
  }
}

TEST_CASE("mixed_family endpoints") {
  const WClassSpec w = uniform_spec(2);
  const DensityMatrix pure_end = mixed_family({w, 1.0});
  const Matrix projector =
      w_class(w).amplitudes() * w_class(w).amplitudes().adjoint();
  CHECK((pure_end.matrix() - projector).norm() < 1e-12);

  const DensityMatrix zero_end = mixed_family({w, 0.0});
  CHECK(std::abs(zero_end.matrix()(0, 0).real() - 1.0) < 1e-12);
  CHECK(zero_end.matrix().norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(mixed_family({w, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(mixed_family({w, -0.1}), std::invalid_argument);
}

TEST_CASE("mixed_family has rank at most two") {
  Rng rng(31);
  const MixedFamilySpec spec{random_w_class_spec(3, rng), 0.37};
  const auto [values, vectors] = eigh(mixed_family(spec).matrix());
  CHECK(values(0) == doctest::Approx(0.63));
  CHECK(values(1) == doctest::Approx(0.37));
  for (Eigen::Index i = 2; i < values.size(); ++i) {
    CHECK(std::abs(values(i)) < 1e-12);
  }
}

TEST_CASE("trial ensemble reproduces the five-qubit block example") {
  WClassSpec w3 = uniform_spec(2);
  const MixedFamilySpec spec{w3, 0.6};
  const Ensemble trial = trial_ensemble(spec);
  REQUIRE(trial.members.size() == 3);
  for (const auto& [weight, member] : trial.members) {
    CHECK(weight == doctest::Approx(1.0 / 3.0));
    // sqrt(3/5)|W'> + sqrt(2/5) w^k |000>
    CHECK(std::abs(std::abs(member.amplitudes()(0)) - std::sqrt(0.4)) <
          1e-12);
    CHECK(std::abs(member.amplitudes()(4) - std::sqrt(0.6) / std::sqrt(3.0)) <
          1e-12);
  }
  CHECK((trial.mix_matrix() - mixed_family(spec).matrix()).norm() < 1e-10);
}

TEST_CASE("trial ensemble at p = 1 is three copies of the same state") {
  const MixedFamilySpec spec{uniform_spec(2), 1.0};
  const Ensemble trial = trial_ensemble(spec);
  REQUIRE(trial.members.size() == 3);
  for (const auto& [weight, member] : trial.members) {
    const double overlap =
        std::abs(member.amplitudes().dot(trial.members[0].second.amplitudes()));
    CHECK(overlap == doctest::Approx(1.0));
  }
  CHECK((trial.mix_matrix() - mixed_family(spec).matrix()).norm() < 1e-10);
}

TEST_CASE("trial ensemble reconstruction over a p grid and random specs") {
  Rng rng(32);
  for (int trial_index = 0; trial_index < 50; ++trial_index) {
    const WClassSpec w = random_w_class_spec(1 + trial_index % 4, rng);
    for (int pi = 0; pi <= 10; ++pi) {
      const MixedFamilySpec spec{w, pi / 10.0};
      const Ensemble ensemble = trial_ensemble(spec);
      CHECK((ensemble.mix_matrix() - mixed_family(spec).matrix()).norm() <
            1e-10);
      for (const auto& [weight, member] : ensemble.members) {
        CHECK(std::abs(member.amplitudes().norm() - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("trial ensemble with r < 1 appends the zero member") {
  const MixedFamilySpec spec{uniform_spec(2), 0.5};
  const Ensemble wide = trial_ensemble(spec, 0.8);
  REQUIRE(wide.members.size() == 4);
  CHECK(wide.members.back().first == doctest::Approx(0.2));
  CHECK((wide.mix_matrix() - mixed_family(spec).matrix()).norm() < 1e-10);
  CHECK_THROWS_AS(trial_ensemble(spec, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(trial_ensemble(spec, 1.4), std::invalid_argument);
}

TEST_CASE("w_partitioned reproduces the five-qubit example layout") {
  PartitionedWSpec spec;
  spec.a_tilde = 1.0 / std::sqrt(5.0);
  spec.blocks = {{"B", {1.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)}},
                 {"C", {1.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)}}};
  const auto [state, partition] = w_partitioned(spec);
  CHECK(state.n_qubits() == 5);
  CHECK(partition.focus() == 0);
  REQUIRE(partition.blocks().size() == 2);
  CHECK(partition.blocks()[0].second == std::vector<int>{1, 2});
  CHECK(partition.blocks()[1].second == std::vector<int>{3, 4});
  const PureState direct = w_class(uniform_spec(4));
  CHECK((state.amplitudes() - direct.amplitudes()).norm() < 1e-12);
}

TEST_CASE("single block of size one reduces to the two-qubit w_class") {
  PartitionedWSpec spec;
  spec.a_tilde = 0.6;
  spec.blocks = {{"B", {0.8}}};
  const auto [state, partition] = w_partitioned(spec);
  WClassSpec direct;
  direct.a = 0.6;
  direct.b = {0.8};
  CHECK((state.amplitudes() - w_class(direct).amplitudes()).norm() < 1e-12);
}

TEST_CASE("reduced_block_analytic matches the partial trace") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<int> sizes =
        (trial % 3 == 0) ? std::vector<int>{1, 2}
                         : (trial % 3 == 1) ? std::vector<int>{2, 2}
                                            : std::vector<int>{1, 1, 2};
    const PartitionedWSpec spec = random_partitioned_spec(sizes, rng);
    const auto [state, partition] = w_partitioned(spec);
    for (const auto& [name, qubits] : partition.blocks()) {
      const MixedFamilySpec analytic = reduced_block_analytic(spec, name);
      std::vector<int> keep{0};
      keep.insert(keep.end(), qubits.begin(), qubits.end());
      const Matrix traced = partial_trace(state, keep).matrix();
      CHECK((mixed_family(analytic).matrix() - traced).norm() < 1e-10);
    }
  }
}

TEST_CASE("reduced_block_analytic covering every qubit returns the original") {
  PartitionedWSpec spec;
  spec.a_tilde = 0.5;
  spec.blocks = {{"B", {0.5, 0.5, 0.5}}};
  const MixedFamilySpec reduced = reduced_block_analytic(spec, "B");
  CHECK(reduced.p == doctest::Approx(1.0));
  CHECK(std::abs(reduced.w.a - Complex(0.5, 0.0)) < 1e-12);
  CHECK_THROWS_AS(reduced_block_analytic(spec, "Z"), std::invalid_argument);
}

TEST_CASE("degenerate block raises the dedicated error") {
  PartitionedWSpec spec;
  spec.a_tilde = 0.0;
  spec.blocks = {{"B", {0.0}}, {"C", {1.0}}};
  CHECK_THROWS_AS(reduced_block_analytic(spec, "B"), DegenerateSpecError);
}

TEST_CASE("reduced_pair_analytic agrees with the two-qubit partial trace") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const MixedFamilySpec spec{random_w_class_spec(3, rng),
                               (trial % 10) / 10.0};
    const DensityMatrix rho = mixed_family(spec);
    for (int j = 1; j <= 3; ++j) {
      const MixedFamilySpec pair = reduced_pair_analytic(spec, j);
      const Matrix traced = partial_trace(rho, {0, j}).matrix();
      CHECK((mixed_family(pair).matrix() - traced).norm() < 1e-10);
    }
  }
}

TEST_CASE("ghz constructor") {
  const PureState state = ghz(3);
  CHECK(std::abs(state.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(state.amplitudes()(7) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("random generation is deterministic per seed") {
  const PureState a = random_pure(3, std::uint64_t{99});
  const PureState b = random_pure(3, std::uint64_t{99});
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);

  const DensityMatrix ma = random_mixed(2, 3, std::uint64_t{7});
  const DensityMatrix mb = random_mixed(2, 3, std::uint64_t{7});
  CHECK((ma.matrix() - mb.matrix()).norm() == 0.0);
}

TEST_CASE("random_mixed honors the rank contract") {
  const DensityMatrix rho = random_mixed(2, 1, std::uint64_t{5});
  const auto [values, vectors] = eigh(rho.matrix());
  CHECK(values(0) == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(values(i)) < 1e-12);
  CHECK_THROWS_AS(random_mixed(2, 5, std::uint64_t{5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(random_pure(13, std::uint64_t{5}), std::invalid_argument);
}

TEST_CASE("random_pure marginals average to maximally mixed") {
  Rng rng(35);
  Matrix mean = Matrix::Zero(2, 2);
  const int samples = 1000;
  for (int s = 0; s < samples; ++s) {
    mean += partial_trace(random_pure(3, rng), {0}).matrix();
  }
  mean /= static_cast<double>(samples);
  Matrix expected(2, 2);
  expected << 0.5, 0.0, 0.0, 0.5;
  CHECK((mean - expected).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("ensembles validate their weights") {
  const PureState state = ghz(2);
  Ensemble bad;
  bad.members.emplace_back(0.6, state);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.members.emplace_back(0.4, ghz(3));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
