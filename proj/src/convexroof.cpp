#include "tangle/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tangle {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kTinyWeight = 1e-15;

// Average-tangle contribution of one unnormalized member with Gram matrix G
// over side A: weight * tangle = 2 (tr G - tr(G^2) / tr G).
double member_contribution(double weight, double gram_sq) {
  if (weight < kTinyWeight) return 0.0;
  const double value = 2.0 * (weight - gram_sq / weight);
  return value > 0.0 ? value : 0.0;
}

// Index bookkeeping: members are stored reshaped as d_a x d_b matrices so
// the side-A Gram matrices are plain products.
struct CutReshaper {
  std::vector<std::uint64_t> abase;
  std::vector<std::uint64_t> bbase;

  CutReshaper(int n_qubits, const std::vector<int>& side_a) {
    std::vector<int> side_b;
    std::vector<bool> in_a(n_qubits, false);
    for (int q : side_a) in_a[q] = true;
    for (int q = 0; q < n_qubits; ++q) {
      if (!in_a[q]) side_b.push_back(q);
    }
    abase = bases_for(side_a, n_qubits);
    bbase = bases_for(side_b, n_qubits);
  }

  Matrix reshape(const Vector& full) const {
    Matrix m(abase.size(), bbase.size());
    for (std::size_t a = 0; a < abase.size(); ++a) {
      for (std::size_t b = 0; b < bbase.size(); ++b) {
        m(a, b) = full(abase[a] | bbase[b]);
      }
    }
    return m;
  }

  Vector unreshape(const Matrix& m) const {
    Vector full = Vector::Zero(Eigen::Index(abase.size()) * bbase.size());
    for (std::size_t a = 0; a < abase.size(); ++a) {
      for (std::size_t b = 0; b < bbase.size(); ++b) {
        full(abase[a] | bbase[b]) = m(a, b);
      }
    }
    return full;
  }

 private:
  static std::vector<std::uint64_t> bases_for(const std::vector<int>& qubits,
                                              int n_qubits) {
    std::vector<std::uint64_t> bases(std::size_t(1) << qubits.size(), 0);
    for (std::size_t s = 0; s < bases.size(); ++s) {
      std::uint64_t full = 0;
      for (std::size_t k = 0; k < qubits.size(); ++k) {
        if ((s >> (qubits.size() - 1 - k)) & 1ULL) {
          full |= qubit_mask(qubits[k], n_qubits);
        }
      }
      bases[s] = full;
    }
    return bases;
  }
};

// Scalar reduction of a two-member rotation. With A = G_ii, B = G_jj,
// X = G_ij = M_i M_j^dagger, the rotated Gram matrices are
//   G_i' = c^2 A + s^2 B + cs Y,   G_j' = s^2 A + c^2 B - cs Y,
// Y = e^{-i phi} X + e^{i phi} X^dagger, so the pair objective is a short
// trigonometric expression in the precomputed traces below.
struct PairCoeffs {
  double trace_a = 0.0, trace_b = 0.0;
  double aa = 0.0, bb = 0.0, ab = 0.0, xdx = 0.0;
  Complex tx{0.0, 0.0}, ax{0.0, 0.0}, bx{0.0, 0.0}, xx{0.0, 0.0};

  static PairCoeffs from_members(const Matrix& mi, const Matrix& mj) {
    const Matrix a = mi * mi.adjoint();
    const Matrix b = mj * mj.adjoint();
    const Matrix x = mi * mj.adjoint();
    PairCoeffs c;
    c.trace_a = a.trace().real();
    c.trace_b = b.trace().real();
    c.aa = a.squaredNorm();
    c.bb = b.squaredNorm();
    c.ab = (a * b).trace().real();
    c.xdx = x.squaredNorm();
    c.tx = x.trace();
    c.ax = (a * x).trace();
    c.bx = (b * x).trace();
    c.xx = (x * x).trace();
    return c;
  }

  double eval(double theta, double phi) const {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double u = c * c;
    const double v = s * s;
    const double w = c * s;
    const Complex ebar = std::polar(1.0, -phi);
    const double yt = 2.0 * (ebar * tx).real();
    const double ya = 2.0 * (ebar * ax).real();
    const double yb = 2.0 * (ebar * bx).real();
    const double yy = 2.0 * (ebar * ebar * xx).real() + 2.0 * xdx;

    const double pi = u * trace_a + v * trace_b + w * yt;
    const double ti = u * u * aa + v * v * bb + w * w * yy +
                      2.0 * u * v * ab + 2.0 * u * w * ya + 2.0 * v * w * yb;
    const double pj = v * trace_a + u * trace_b - w * yt;
    const double tj = v * v * aa + u * u * bb + w * w * yy +
                      2.0 * u * v * ab - 2.0 * v * w * ya - 2.0 * u * w * yb;
    return member_contribution(pi, ti) + member_contribution(pj, tj);
  }
};

struct PairMinimum {
  double theta = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

template <typename F>
std::pair<double, double> golden_minimize(const F& f, double lo, double hi,
                                          int iterations) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < iterations; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

// Global-ish 2D minimization of the pair objective: coarse torus grid, then
// alternating golden-section refinement of angle and phase.
PairMinimum minimize_pair(const PairCoeffs& coeffs) {
  constexpr int kThetaGrid = 8;
  constexpr int kPhiGrid = 8;
  const double theta_step = M_PI / kThetaGrid;
  const double phi_step = 2.0 * M_PI / kPhiGrid;

  PairMinimum best{0.0, 0.0, coeffs.eval(0.0, 0.0)};
  for (int i = 0; i < kThetaGrid; ++i) {
    const double theta = -M_PI / 2.0 + (i + 0.5) * theta_step;
    for (int j = 0; j < kPhiGrid; ++j) {
      const double phi = -M_PI + j * phi_step;
      const double value = coeffs.eval(theta, phi);
      if (value < best.value) best = {theta, phi, value};
    }
  }

  for (int round = 0; round < 2; ++round) {
    auto [theta, ft] = golden_minimize(
        [&](double t) { return coeffs.eval(t, best.phi); },
        best.theta - theta_step, best.theta + theta_step, 36);
    if (ft < best.value) {
      best.theta = theta;
      best.value = ft;
    }
    auto [phi, fp] = golden_minimize(
        [&](double p) { return coeffs.eval(best.theta, p); },
        best.phi - phi_step, best.phi + phi_step, 36);
    if (fp < best.value) {
      best.phi = phi;
      best.value = fp;
    }
  }
  return best;
}

double total_objective(const std::vector<Matrix>& members) {
  double total = 0.0;
  for (const Matrix& m : members) {
    const Matrix gram = m * m.adjoint();
    total += member_contribution(gram.trace().real(), gram.squaredNorm());
  }
  return total;
}

// Coordinate descent over all row pairs until a full sweep improves the
// objective by less than step_tolerance, or the sweep budget runs out.
double descend(std::vector<Matrix>& members, const RoofConfig& config,
               int max_sweeps) {
  const int m = static_cast<int>(members.size());
  double current = total_objective(members);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (members[i].squaredNorm() < kTinyWeight &&
            members[j].squaredNorm() < kTinyWeight) {
          continue;
        }
        const PairCoeffs coeffs = PairCoeffs::from_members(members[i],
                                                           members[j]);
        const double baseline = coeffs.eval(0.0, 0.0);
        const PairMinimum best = minimize_pair(coeffs);
        if (best.value < baseline - 1e-15 * (1.0 + std::abs(baseline))) {
          const double c = std::cos(best.theta);
          const double s = std::sin(best.theta);
          const Complex phase = std::polar(1.0, best.phi);
          const Matrix mi = members[i];
          members[i] = c * mi + s * phase * members[j];
          members[j] = -s * std::conj(phase) * mi + c * members[j];
        }
      }
    }
    const double updated = total_objective(members);
    const double gain = current - updated;
    current = updated;
    if (gain < config.step_tolerance) break;
  }
  return current;
}

Matrix random_isometry_slice(int m, int r, Rng& rng) {
  // Exponential of a random anti-Hermitian matrix, first r columns.
  Matrix h(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) h(i, j) = rng.normal_complex();
  }
  h = Matrix((h + h.adjoint()) / 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  Vector phases(m);
  for (int i = 0; i < m; ++i) {
    phases(i) = std::polar(1.0, solver.eigenvalues()(i));
  }
  const Matrix unitary = solver.eigenvectors() * phases.asDiagonal() *
                         solver.eigenvectors().adjoint();
  return unitary.leftCols(r);
}

std::vector<Matrix> members_from_mixer(const std::vector<Matrix>& spectral,
                                       const Matrix& mixer) {
  const int m = static_cast<int>(mixer.rows());
  const int r = static_cast<int>(mixer.cols());
  std::vector<Matrix> members(m);
  for (int j = 0; j < m; ++j) {
    Matrix acc = Matrix::Zero(spectral[0].rows(), spectral[0].cols());
    for (int k = 0; k < r; ++k) acc += mixer(j, k) * spectral[k];
    members[j] = std::move(acc);
  }
  return members;
}

int effective_members(const std::vector<Matrix>& members) {
  int count = 0;
  for (const Matrix& m : members) {
    if (m.squaredNorm() > 1e-6) ++count;
  }
  return count;
}

Ensemble ensemble_from_members(const std::vector<Matrix>& members,
                               const CutReshaper& reshaper, int n_qubits) {
  struct Entry {
    double weight;
    Vector state;
  };
  std::vector<Entry> entries;
  double total = 0.0;
  for (const Matrix& m : members) {
    const double weight = m.squaredNorm();
    if (weight < tol::kZeroWeight) continue;
    Vector full = reshaper.unreshape(m);
    full /= std::sqrt(weight);
    entries.push_back({weight, std::move(full)});
    total += weight;
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) {
                     return x.weight > y.weight;
                   });
  Ensemble ensemble;
  for (auto& entry : entries) {
    ensemble.members.emplace_back(entry.weight / total,
                                  PureState(n_qubits, std::move(entry.state)));
  }
  ensemble.validate();
  return ensemble;
}

struct Spectral {
  std::vector<Matrix> scaled;  // sqrt(mu_k) v_k reshaped, rank entries
  int rank = 0;
};

Spectral spectral_members(const DensityMatrix& rho, const CutReshaper& rs) {
  const auto [values, vectors] = eigh(rho.matrix());
  Spectral out;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) <= tol::kRankCutoff) break;
    out.scaled.push_back(
        rs.reshape(Vector(std::sqrt(values(k)) * vectors.col(k))));
    ++out.rank;
  }
  if (out.rank == 0) {
    throw std::invalid_argument("state has no eigenvalue above the cutoff");
  }
  return out;
}

}  // namespace

void RoofConfig::validate() const {
  if (ensemble_size < 0) {
    throw std::invalid_argument("ensemble_size must be >= 0 (0 = auto)");
  }
  if (restarts < 1) {
    throw std::invalid_argument("restarts must be >= 1");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(step_tolerance > 0.0) || !(certificate_tolerance > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
}

double ensemble_average_tangle(const Ensemble& ensemble, const QubitCut& cut) {
  ensemble.validate();
  double total = 0.0;
  for (const auto& [weight, state] : ensemble.members) {
    total += weight * pure_tangle(state, cut).value;
  }
  return total;
}

Ensemble decomposition_from_mixer(const DensityMatrix& rho,
                                  const Matrix& mixer) {
  const auto [values, vectors] = eigh(rho.matrix());
  int rank = 0;
  while (rank < values.size() && values(rank) > tol::kRankCutoff) ++rank;
  if (mixer.cols() != rank) {
    throw std::invalid_argument(
        "mixer must have one column per nonzero eigenvalue (rank " +
        std::to_string(rank) + ")");
  }
  if (mixer.rows() < mixer.cols()) {
    throw std::invalid_argument("mixer needs at least rank rows");
  }
  const Matrix defect = mixer.adjoint() * mixer -
                        Matrix::Identity(rank, rank);
  if (defect.cwiseAbs().maxCoeff() > tol::kReconstruction) {
    throw std::invalid_argument("mixer columns are not orthonormal");
  }

  Matrix scaled(rho.dim(), rank);
  for (int k = 0; k < rank; ++k) {
    scaled.col(k) = std::sqrt(values(k)) * vectors.col(k);
  }
  const Matrix raw_members = scaled * mixer.transpose();

  struct Entry {
    double weight;
    Vector state;
  };
  std::vector<Entry> entries;
  double total = 0.0;
  for (Eigen::Index j = 0; j < raw_members.cols(); ++j) {
    const double weight = raw_members.col(j).squaredNorm();
    if (weight < tol::kZeroWeight) continue;
    entries.push_back({weight, Vector(raw_members.col(j) /
                                      std::sqrt(weight))});
    total += weight;
  }
  Ensemble ensemble;
  for (auto& entry : entries) {
    ensemble.members.emplace_back(
        entry.weight / total, PureState(rho.n_qubits(),
                                        std::move(entry.state)));
  }
  ensemble.validate();
  return ensemble;
}

RoofUpperBound optimize_roof(const DensityMatrix& rho, const QubitCut& cut,
                             const RoofConfig& config) {
  config.validate();
  if (cut.n_qubits() != rho.n_qubits()) {
    throw std::invalid_argument("cut qubit count does not match state");
  }

  const CutReshaper reshaper(rho.n_qubits(), cut.side_a());
  const Spectral spectral = spectral_members(rho, reshaper);
  const int rank = spectral.rank;

  if (config.ensemble_size > 0 && config.ensemble_size < rank) {
    throw std::invalid_argument("ensemble_size is below the numerical rank " +
                                std::to_string(rank));
  }

  if (rank == 1) {
    // Pure state: the only decomposition is the state itself.
    RoofUpperBound result;
    result.value = total_objective(spectral.scaled);
    result.witness = ensemble_from_members(spectral.scaled, reshaper,
                                           rho.n_qubits());
    return result;
  }

  std::vector<int> sizes;
  if (config.ensemble_size > 0) {
    sizes.push_back(config.ensemble_size);
  } else {
    const int largest = std::min(rank * rank, rank + 2);
    for (int m = rank; m <= largest; ++m) sizes.push_back(m);
  }

  // Every restart runs a bounded scouting descent; only scouts close to the
  // running best get the full sweep budget (at most two per size). All rules
  // depend on earlier runs only, so raising `restarts` can never raise the
  // returned bound and results stay deterministic per seed.
  constexpr int kScoutSweeps = 32;
  constexpr double kPolishWindow = 1e-3;
  constexpr int kPolishCapPerSize = 2;
  // Witness choice: the most compact run within this window of the best.
  constexpr double kWitnessWindow = 1e-9;

  double best_value = std::numeric_limits<double>::infinity();
  double compact_value = std::numeric_limits<double>::infinity();
  int compact_count = std::numeric_limits<int>::max();
  std::vector<Matrix> compact_members;

  const auto record = [&](double value, std::vector<Matrix>&& members) {
    const int count = effective_members(members);
    if (value < best_value) {
      best_value = value;
      if (compact_value > best_value + kWitnessWindow) {
        compact_value = value;
        compact_count = count;
        compact_members = members;
      }
    }
    if (value <= best_value + kWitnessWindow &&
        (count < compact_count ||
         (count == compact_count && value < compact_value))) {
      compact_value = value;
      compact_count = count;
      compact_members = std::move(members);
    }
  };

  for (int m : sizes) {
    int polishes_left = kPolishCapPerSize;
    for (int restart = 0; restart < config.restarts; ++restart) {
      Matrix mixer;
      if (restart == 0) {
        mixer = Matrix::Identity(m, rank);
      } else {
        Rng rng(mix_seed(config.seed,
                         (static_cast<std::uint64_t>(m) << 32) |
                             static_cast<std::uint64_t>(restart)));
        mixer = random_isometry_slice(m, rank, rng);
      }
      std::vector<Matrix> members = members_from_mixer(spectral.scaled, mixer);
      double value = descend(members, config,
                             std::min(kScoutSweeps, config.max_iterations));
      if (polishes_left > 0 && value < best_value + kPolishWindow) {
        --polishes_left;
        value = descend(members, config, config.max_iterations);
      }
      record(value, std::move(members));
    }
  }

  RoofUpperBound result;
  result.value = best_value;
  result.witness = ensemble_from_members(compact_members, reshaper,
                                         rho.n_qubits());
  return result;
}

double ckw_lower_bound(const DensityMatrix& rho, int focus) {
  const int n = rho.n_qubits();
  if (n < 2) {
    throw std::invalid_argument("need at least two qubits");
  }
  if (focus < 0 || focus >= n) {
    throw std::invalid_argument("focus qubit out of range");
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == focus) continue;
    std::vector<int> keep{std::min(focus, j), std::max(focus, j)};
    const double c = wootters_concurrence(partial_trace(rho, keep)).value;
    total += c * c;
  }
  return total;
}

RoofBracket certified_tangle(const DensityMatrix& rho, int focus,
                             const RoofConfig& config) {
  const QubitCut cut(rho.n_qubits(), {focus});
  RoofUpperBound upper = optimize_roof(rho, cut, config);
  RoofBracket bracket;
  bracket.lower = ckw_lower_bound(rho, focus);
  bracket.upper = upper.value;
  bracket.witness = std::move(upper.witness);
  bracket.certified = bracket.gap() < config.certificate_tolerance;
  return bracket;
}

}  // namespace tangle
