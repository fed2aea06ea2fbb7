#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace tangle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Dense storage only; the matrix side caps at 4096.
inline constexpr int kMaxQubits = 12;

// Centralized tolerances. Constructors validate against these once; the
// operations may then assume the invariants hold.
namespace tol {
inline constexpr double kHermitian = 1e-10;       // entrywise Hermiticity
inline constexpr double kNorm = 1e-10;            // state / trace normalization
inline constexpr double kPsdFloor = -1e-9;        // smallest admissible eigenvalue
inline constexpr double kReconstruction = 1e-9;   // eigendecomposition / mixture residuals
inline constexpr double kRankCutoff = 1e-10;      // eigenvalues below this count as zero
inline constexpr double kZeroWeight = 1e-12;      // ensemble members below this are dropped
inline constexpr double kCertificate = 1e-6;      // roof bracket certification gap
inline constexpr double kSaturation = 1e-6;       // monogamy saturation threshold
inline constexpr double kSlack = 1e-9;            // inequality slack tolerance
}  // namespace tol

// Version tag for the random stream; recorded in reports so sweeps can be
// replayed across toolkit releases.
inline constexpr const char* kRngVersion = "mt19937_64/box-muller-v1";

// Seeded generator with a fixed cross-platform sequence. Doubles are built
// from raw 64-bit draws instead of std::uniform_real_distribution /
// std::normal_distribution, whose sequences are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    return std::min(static_cast<int>(uniform01() * n), n - 1);
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Complex normal_complex() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// splitmix64 finalizer; derives independent substreams from (seed, stream).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tangle
