#include "tangle/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace tangle {

namespace {

// Negative eigenvalue dust below this magnitude is clamped to zero; the
// spin-flip product has nonnegative spectrum analytically.
constexpr double kEigenvalueDust = 1e-12;

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

double reduced_tangle(const PureState& state, const QubitCut& cut) {
  const DensityMatrix rho_a = partial_trace(state, cut.side_a());
  const Matrix& m = rho_a.matrix();
  if (m.rows() == 2) {
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    return clamp0(4.0 * det);
  }
  const double purity = m.squaredNorm();  // tr(rho^2) for Hermitian rho
  return clamp0(2.0 * (1.0 - purity));
}

Matrix spin_flip_operator() {
  Matrix f = Matrix::Zero(4, 4);
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

}  // namespace

std::string measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::concurrence:
      return "concurrence";
    case MeasureKind::tangle:
      return "tangle";
    case MeasureKind::negativity:
      return "negativity";
    case MeasureKind::realignment:
      return "realignment";
  }
  throw std::logic_error("unknown measure kind");
}

MeasureKind measure_kind_from_name(const std::string& name) {
  if (name == "concurrence") return MeasureKind::concurrence;
  if (name == "tangle") return MeasureKind::tangle;
  if (name == "negativity") return MeasureKind::negativity;
  if (name == "realignment") return MeasureKind::realignment;
  throw std::invalid_argument("unknown measure '" + name + "'");
}

MeasureValue pure_concurrence(const PureState& state, const QubitCut& cut) {
  if (cut.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }
  return {MeasureKind::concurrence, std::sqrt(reduced_tangle(state, cut)),
          cut};
}

MeasureValue pure_tangle(const PureState& state, const QubitCut& cut) {
  if (cut.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }
  return {MeasureKind::tangle, reduced_tangle(state, cut), cut};
}

MeasureValue wootters_concurrence(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument(
        "the spin-flip concurrence needs exactly two qubits");
  }
  static const Matrix flip = spin_flip_operator();
  const Matrix& m = rho.matrix();
  const Matrix flipped = flip * m.conjugate() * flip;
  const Matrix product = m * flipped;

  Eigen::ComplexEigenSolver<Matrix> solver(product, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spin-flip eigensolve failed");
  }
  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i).real();
    // The spectrum is nonnegative in exact arithmetic. Dust below 1e-12 is
    // clamped to zero before the square root (the root would otherwise
    // inflate solver noise on vanishing eigenvalues to ~1e-9); anything
    // more negative indicates a genuinely bad input.
    if (ev < -kEigenvalueDust) {
      throw std::runtime_error("spin-flip product has eigenvalue " +
                               std::to_string(ev));
    }
    roots[i] = std::abs(ev) < kEigenvalueDust ? 0.0 : std::sqrt(ev);
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  const double c = clamp0(roots[0] - roots[1] - roots[2] - roots[3]);
  return {MeasureKind::concurrence, c, QubitCut(2, {0})};
}

MeasureValue negativity(const DensityMatrix& rho, const QubitCut& cut) {
  if (cut.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }
  const Matrix pt = partial_transpose(rho, cut.side_a());
  return {MeasureKind::negativity, clamp0(trace_norm(pt) - 1.0), cut};
}

MeasureValue realignment_measure(const DensityMatrix& rho,
                                 const QubitCut& cut) {
  if (cut.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }
  const Matrix realigned = realign(rho, cut);
  return {MeasureKind::realignment, clamp0(trace_norm(realigned) - 1.0), cut};
}

MeasureValue mixed_family_tangle(const MixedFamilySpec& spec) {
  spec.validate();
  const double value = 4.0 * spec.p * spec.p * spec.w.excitation_weight() *
                       spec.w.tail_weight();
  return {MeasureKind::tangle, value, QubitCut(spec.w.n_qubits(), {0})};
}

}  // namespace tangle
