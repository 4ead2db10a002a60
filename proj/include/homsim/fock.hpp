#pragma once

// Few-photon second-quantization engine for two modes: occupation-number
// states, beam-splitter action by creation-operator substitution
// a^ -> (c^ + s*i d^)/sqrt(2), b^ -> (s*i c^ + d^)/sqrt(2), per-mode phase
// shifts, and the derived coincidence/bunching probabilities.

#include "homsim/numerics.hpp"

#include <map>
#include <utility>

namespace homsim {

struct CutoffExceededError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ZeroStateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Occupation of the two modes. Mode 0 is the first port of the pair (a/c/e),
// mode 1 the second (b/d/f).
struct OccPair {
  int n_first = 0;
  int n_second = 0;

  int total() const { return n_first + n_second; }
  auto operator<=>(const OccPair&) const = default;
};

inline constexpr int kDefaultCutoff = 4;  // max total photons across the two modes
inline constexpr double kAmplitudePruneTol = 1e-14;

// Normalized superposition over occupation pairs, stored sparsely. Amplitudes
// with magnitude below kAmplitudePruneTol are dropped and the state is
// renormalized after every operation.
class FockState {
 public:
  FockState(std::map<OccPair, Complex> amplitudes, int cutoff = kDefaultCutoff);

  static FockState basis(int n_first, int n_second, int cutoff = kDefaultCutoff);

  const std::map<OccPair, Complex>& amplitudes() const { return amps_; }
  int cutoff() const { return cutoff_; }

  Complex amplitude(const OccPair& occ) const;
  double norm_sq() const;
  int max_total() const;  // largest total occupation among retained terms

 private:
  std::map<OccPair, Complex> amps_;
  int cutoff_ = kDefaultCutoff;

  void prune_and_normalize();
};

// Beam-splitter action on a normalized state; photon number is conserved term
// by term. Throws CutoffExceededError when the state holds more photons than
// `cutoff`.
FockState bs_transform(const FockState& state, BasisSign sign, int cutoff = kDefaultCutoff);

// Each term acquires e^{i n phi}, n being its occupation of `mode` (0 or 1).
FockState phase_transform(const FockState& state, int mode, double phi);

// Probability of exactly one photon in each mode: |<1,1|state>|^2.
double coincidence_prob(const FockState& state);

// (P(2,0), P(0,2)) for a two-photon state.
std::pair<double, double> bunching_probs(const FockState& state);

// |1,0> through BS, phase zeta on mode 1, BS. Returns (P_e, P_f) =
// (sin^2(zeta/2), cos^2(zeta/2)).
std::pair<double, double> single_photon_mzi(double zeta);

// Expected photon number per mode.
Eigen::Vector2d mean_occupations(const FockState& state);

}  // namespace homsim
