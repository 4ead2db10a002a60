#pragma once

// Classical coherence-optics engine: deterministic two-photon beam-splitter
// intensities, normalized coincidence, Mach-Zehnder transfer and fringe, and
// seeded Monte Carlo ensembles over the inter-photon phase theta.

#include "homsim/numerics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace homsim {

struct UndefinedCoincidenceError : std::domain_error {
  using std::domain_error::domain_error;
};

struct UnknownScenarioError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Reduce an angle to [0, 2*pi).
double reduce_angle(double x);

// Optional relative phases of a scenario: theta between the two inputs of a
// beam splitter, zeta between the two internal MZI paths. Stored reduced to
// [0, 2*pi).
class RelativePhase {
 public:
  RelativePhase() = default;
  static RelativePhase with_theta(double t);
  static RelativePhase with_zeta(double z);

  RelativePhase& set_theta(double t);
  RelativePhase& set_zeta(double z);
  std::optional<double> theta() const { return theta_; }
  std::optional<double> zeta() const { return zeta_; }

 private:
  std::optional<double> theta_;
  std::optional<double> zeta_;
};

// Normalized coincidence value R = Ic*Id / ((Ic+Id)/2)^2.
struct CoincidenceStat {
  double r_value = 0.0;
};

struct EnsembleStats {
  std::int64_t n_samples = 0;
  Eigen::Vector2d mean_intensity = Eigen::Vector2d::Zero();
  double mean_r = 0.0;
  double var_r = 0.0;  // population variance of per-sample R
  std::uint64_t seed = 0;
};

enum class PhaseDistKind { UniformTheta, FixedTheta };

struct PhaseDistribution {
  PhaseDistKind kind = PhaseDistKind::UniformTheta;
  double fixed_theta = 0.0;  // reduced to [0, 2*pi)

  static PhaseDistribution uniform() { return {PhaseDistKind::UniformTheta, 0.0}; }
  static PhaseDistribution fixed(double theta);
};

// Output intensities (Ic, Id) of a balanced beam splitter fed with
// [E0; E0*e^{i theta}], in units of I0. Returns the closed form
// (1 -+ sin theta, 1 +- sin theta) with the upper sign for Plus; every call
// also routes the same input through the element matrices and verifies both
// paths agree to 1e-12.
Eigen::Vector2d hom_outputs(double theta, BasisSign sign);

CoincidenceStat coincidence_normalized(double i_c, double i_d);

// Monte Carlo ensemble over theta for the named scenario (only "hom").
// Deterministic for a fixed seed: sample k depends only on (seed, k) and the
// reduction tree depends only on n, so the result is independent of how many
// workers evaluate it.
EnsembleStats ensemble_average(std::string_view scenario, const PhaseDistribution& dist,
                               std::int64_t n, std::uint64_t seed, int workers = 1);

// BS * P(zeta) * BS. Under the Unitary convention this equals
// (1/2) [[1 - e^{i zeta}, i(1 + e^{i zeta})], [i(1 + e^{i zeta}), -(1 - e^{i zeta})]].
ElementMatrix mzi_transfer(double zeta, Convention conv = Convention::Unitary);

struct FringePoint {
  double zeta = 0.0;
  double i_e = 0.0;
  double i_f = 0.0;
};

// Unitary-convention MZI output intensities for input [E0; 0]:
// I_e = I0 sin^2(zeta/2), I_f = I0 cos^2(zeta/2).
std::vector<FringePoint> mzi_fringe(std::span<const double> zeta_grid);

}  // namespace homsim
