#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tangle/qstate.hpp"
#include "tangle/states.hpp"
#include "testsupport.hpp"

using namespace tangle;
using tangle::testing::kron;
using tangle::testing::oracle_partial_trace;
using tangle::testing::oracle_schmidt_squared;

namespace {

PureState bell_pair() {
  Vector amps = Vector::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  return PureState(2, amps);
}

}  // namespace

TEST_CASE("state validation rejects bad inputs") {
  Vector short_vec = Vector::Zero(3);
  CHECK_THROWS_AS(PureState(2, short_vec), std::invalid_argument);

  Vector unnormalized = Vector::Zero(4);
  unnormalized(0) = 0.9;
  CHECK_THROWS_AS(PureState(2, unnormalized), std::invalid_argument);

  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 1) = 1.0;
  not_hermitian(0, 0) = 1.0;
  CHECK_THROWS_AS(DensityMatrix(1, not_hermitian), std::invalid_argument);

  Matrix wrong_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix(1, wrong_trace), std::invalid_argument);

  Matrix not_psd(2, 2);
  not_psd << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(1, not_psd), std::invalid_argument);
}

TEST_CASE("cut validation") {
  CHECK_THROWS_AS(QubitCut(3, {}), std::invalid_argument);
  CHECK_THROWS_AS(QubitCut(3, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(QubitCut(3, {3}), std::invalid_argument);
  const QubitCut cut(3, {2, 0});
  CHECK(cut.side_a() == std::vector<int>{0, 2});
  CHECK(cut.side_b() == std::vector<int>{1});
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(Partition(3, 0, {{"B", {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(3, 0, {{"B", {1, 2}}, {"B", {}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Partition(4, 0, {{"B", {1, 2}}, {"C", {2, 3}}}),
                  std::invalid_argument);
  const Partition singles = Partition::singletons(4, 2);
  CHECK(singles.blocks().size() == 3);
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
  const DensityMatrix rho = bell_pair().to_density();
  const Matrix marginal = partial_trace(rho, {0}).matrix();
  Matrix expected(2, 2);
  expected << 0.5, 0.0, 0.0, 0.5;
  CHECK((marginal - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of the uniform five-qubit single-excitation state") {
  WClassSpec spec;
  spec.a = 1.0 / std::sqrt(5.0);
  spec.b.assign(4, 1.0 / std::sqrt(5.0));
  const Matrix marginal = partial_trace(w_class(spec), {0}).matrix();
  CHECK(std::abs(marginal(0, 0).real() - 0.8) < 1e-12);
  CHECK(std::abs(marginal(1, 1).real() - 0.2) < 1e-12);
  CHECK(std::abs(marginal(0, 1)) < 1e-12);
  const double det =
      (marginal(0, 0) * marginal(1, 1) - marginal(0, 1) * marginal(1, 0))
          .real();
  CHECK(std::abs(4.0 * det - 16.0 / 25.0) < 1e-12);
}

TEST_CASE("partial trace matches the index-loop oracle on random states") {
  Rng rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_pure(3, rng).to_density();
    for (const auto& keep :
         {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{0, 2},
          std::vector<int>{1, 2}}) {
      const Matrix fast = partial_trace(rho, keep).matrix();
      const Matrix slow = oracle_partial_trace(rho.matrix(), 3, keep);
      CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("partial trace from amplitudes agrees with the matrix path") {
  Rng rng(12);
  const PureState psi = random_pure(4, rng);
  for (const auto& keep : {std::vector<int>{0, 3}, std::vector<int>{1, 2}}) {
    const Matrix direct = partial_trace(psi, keep).matrix();
    const Matrix via_density = partial_trace(psi.to_density(), keep).matrix();
    CHECK((direct - via_density).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial trace preserves trace and Hermiticity") {
  Rng rng(13);
  const DensityMatrix rho = random_mixed(4, 5, rng);
  const DensityMatrix reduced = partial_trace(rho, {1, 3});
  CHECK(std::abs(reduced.matrix().trace().real() - 1.0) < 1e-12);
  CHECK((reduced.matrix() - reduced.matrix().adjoint()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("Schmidt symmetry: both marginals share nonzero spectrum") {
  Rng rng(14);
  const PureState psi = random_pure(5, rng);
  const auto [va, _a] = eigh(partial_trace(psi, {0, 2}).matrix());
  const auto [vb, _b] = eigh(partial_trace(psi, {1, 3, 4}).matrix());
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    CHECK(std::abs(va(i) - vb(i)) < 1e-9);  // first 4 entries cover side A
  }
}

TEST_CASE("partial transpose of a product state stays PSD") {
  Rng rng(15);
  const Matrix rho_a = random_mixed(1, 2, rng).matrix();
  const Matrix rho_b = random_mixed(1, 2, rng).matrix();
  const DensityMatrix product(2, kron(rho_a, rho_b));
  const Matrix pt = partial_transpose(product, {0});
  CHECK((pt - kron(rho_a.transpose(), rho_b)).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(pt);
  CHECK(solver.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("partial transpose of a Bell pair has eigenvalues {1/2 x3, -1/2}") {
  const Matrix pt = partial_transpose(bell_pair().to_density(), {0});
  Eigen::SelfAdjointEigenSolver<Matrix> solver(pt);
  CHECK(std::abs(solver.eigenvalues()(0) + 0.5) < 1e-12);
  for (int i = 1; i < 4; ++i) {
    CHECK(std::abs(solver.eigenvalues()(i) - 0.5) < 1e-12);
  }
}

TEST_CASE("partial transpose is an exact involution and preserves trace") {
  Rng rng(16);
  const DensityMatrix rho = random_mixed(3, 4, rng);
  const Matrix once = partial_transpose(rho, {0, 2});
  CHECK(std::abs(once.trace().real() - 1.0) < 1e-14);
  const Matrix twice = partial_transpose(once, 3, {0, 2});
  CHECK((twice - rho.matrix()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("realignment of a product state is rank one with small trace norm") {
  Rng rng(17);
  const Matrix rho_a = random_mixed(1, 2, rng).matrix();
  const Matrix rho_b = random_mixed(2, 3, rng).matrix();
  const DensityMatrix product(3, kron(rho_a, rho_b));
  const Matrix realigned = realign(product, QubitCut(3, {0}));
  CHECK(realigned.rows() == 4);
  CHECK(realigned.cols() == 16);
  Eigen::JacobiSVD<Matrix> svd(realigned);
  CHECK(svd.singularValues()(1) < 1e-12);  // rank 1
  const double expected = rho_a.norm() * rho_b.norm();
  CHECK(std::abs(trace_norm(realigned) - expected) < 1e-12);
  CHECK(trace_norm(realigned) <= 1.0 + 1e-12);
}

TEST_CASE("realignment of a Bell pair has trace norm 2") {
  const Matrix realigned = realign(bell_pair().to_density(), QubitCut(2, {0}));
  CHECK(std::abs(trace_norm(realigned) - 2.0) < 1e-12);
}

TEST_CASE("realignment trace norm equals squared sum of Schmidt coefficients") {
  Rng rng(18);
  const PureState psi = random_pure(3, rng);  // a 2 x 4 bipartition
  const QubitCut cut(3, {0});
  const auto mu = oracle_schmidt_squared(psi, {0});
  double sum_roots = 0.0;
  for (double m : mu) sum_roots += std::sqrt(m);
  const double tn = trace_norm(realign(psi.to_density(), cut));
  CHECK(std::abs(tn - sum_roots * sum_roots) < 1e-10);
}

TEST_CASE("trace norm basics") {
  CHECK(std::abs(trace_norm(Matrix::Identity(4, 4)) - 4.0) < 1e-12);
  Matrix diag = Matrix::Zero(4, 4);
  diag(0, 0) = 0.5;
  diag(1, 1) = 0.5;
  diag(2, 2) = 0.5;
  diag(3, 3) = -0.5;
  CHECK(std::abs(trace_norm(diag) - 2.0) < 1e-12);
}

TEST_CASE("trace norm equals absolute eigenvalue sum for Hermitian input") {
  Rng rng(19);
  Matrix g(5, 5);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) g(i, j) = rng.normal_complex();
  }
  const Matrix herm = g + g.adjoint();
  const auto [values, vectors] = eigh(herm);
  CHECK(std::abs(trace_norm(herm) - values.cwiseAbs().sum()) < 1e-9);
}

TEST_CASE("trace norm is unitarily invariant") {
  Rng rng(20);
  Matrix g(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g(i, j) = rng.normal_complex();
  }
  const double base = trace_norm(g);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix u = random_unitary(4, rng);
    const Matrix v = random_unitary(4, rng);
    CHECK(std::abs(trace_norm(u * g * v) - base) < 1e-9);
  }
}

TEST_CASE("eigh examples and contracts") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  const auto [values, vectors] = eigh(diag);
  CHECK(values(0) == doctest::Approx(0.7));
  CHECK(values(1) == doctest::Approx(0.3));

  Matrix pauli_x = Matrix::Zero(2, 2);
  pauli_x(0, 1) = 1.0;
  pauli_x(1, 0) = 1.0;
  const auto [px_values, px_vectors] = eigh(pauli_x);
  CHECK(px_values(0) == doctest::Approx(1.0));
  CHECK(px_values(1) == doctest::Approx(-1.0));

  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(not_hermitian), std::invalid_argument);
}

TEST_CASE("eigh reconstruction residual on random Hermitian matrices") {
  Rng rng(21);
  Matrix g(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) g(i, j) = rng.normal_complex();
  }
  const Matrix herm = (g + g.adjoint()) / 2.0;
  const auto [values, vectors] = eigh(herm);
  const Matrix rebuilt =
      vectors * values.asDiagonal().toDenseMatrix().cast<Complex>() *
      vectors.adjoint();
  CHECK((herm - rebuilt).norm() < 1e-9);
  CHECK((vectors.adjoint() * vectors - Matrix::Identity(8, 8)).norm() < 1e-9);
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    CHECK(values(i - 1) >= values(i));
  }
}

TEST_CASE("operation argument validation") {
  const DensityMatrix rho = bell_pair().to_density();
  CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(rho, {5}), std::invalid_argument);
}
