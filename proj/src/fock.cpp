#include "homsim/fock.hpp"

#include <array>

namespace homsim {

namespace {

constexpr int kMaxPhotons = 8;

constexpr std::array<double, kMaxPhotons + 1> kFactorial = {1.0,    1.0,    2.0,    6.0,   24.0,
                                                            120.0,  720.0,  5040.0, 40320.0};

double binom(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
  return out;
}

// (s*i)^p, exact on the unit lattice {1, i, -1, -i}
Complex basis_i_power(BasisSign s, int p) {
  static constexpr Complex cycle[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  Complex out = cycle[p & 3];
  if (s == BasisSign::Minus && (p & 1)) out = -out;
  return out;
}

}  // namespace

FockState::FockState(std::map<OccPair, Complex> amplitudes, int cutoff)
    : amps_(std::move(amplitudes)), cutoff_(cutoff) {
  if (cutoff_ < 0 || cutoff_ > kMaxPhotons)
    throw std::invalid_argument("FockState: cutoff out of supported range");
  for (const auto& [occ, amp] : amps_) {
    if (occ.n_first < 0 || occ.n_second < 0)
      throw std::invalid_argument("FockState: negative occupation");
    if (occ.total() > cutoff_)
      throw CutoffExceededError("FockState: occupation exceeds cutoff");
    if (!finite_amp(amp)) throw NonFiniteError("FockState: non-finite amplitude");
  }
  prune_and_normalize();
}

FockState FockState::basis(int n_first, int n_second, int cutoff) {
  return FockState({{OccPair{n_first, n_second}, Complex{1.0, 0.0}}}, cutoff);
}

Complex FockState::amplitude(const OccPair& occ) const {
  const auto it = amps_.find(occ);
  return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double FockState::norm_sq() const {
  double out = 0.0;
  for (const auto& [occ, amp] : amps_) out += std::norm(amp);
  return out;
}

int FockState::max_total() const {
  int out = 0;
  for (const auto& [occ, amp] : amps_) out = std::max(out, occ.total());
  return out;
}

void FockState::prune_and_normalize() {
  for (auto it = amps_.begin(); it != amps_.end();)
    it = std::abs(it->second) < kAmplitudePruneTol ? amps_.erase(it) : std::next(it);
  const double n2 = norm_sq();
  if (!(n2 > 0.0)) throw ZeroStateError("FockState: zero-norm state");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& [occ, amp] : amps_) amp *= inv;
}

FockState bs_transform(const FockState& state, BasisSign sign, int cutoff) {
  if (state.max_total() > cutoff)
    throw CutoffExceededError("bs_transform: state exceeds photon cutoff");

  // |n,m> = (a^)^n (b^)^m |0,0> / sqrt(n! m!); substituting the output-mode
  // operators and expanding both binomials gives the coefficient of |p,q>.
  std::map<OccPair, Complex> out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    const int n = occ.n_first;
    const int m = occ.n_second;
    const double pref = std::pow(2.0, -0.5 * (n + m)) / std::sqrt(kFactorial[n] * kFactorial[m]);
    for (int j = 0; j <= n; ++j) {
      for (int k = 0; k <= m; ++k) {
        const int p = j + k;
        const int q = (n - j) + (m - k);
        const Complex phase = basis_i_power(sign, (n - j) + k);
        const double coeff = binom(n, j) * binom(m, k) * std::sqrt(kFactorial[p] * kFactorial[q]);
        out[OccPair{p, q}] += amp * pref * coeff * phase;
      }
    }
  }
  return FockState(std::move(out), state.cutoff());
}

FockState phase_transform(const FockState& state, int mode, double phi) {
  if (mode != 0 && mode != 1) throw std::out_of_range("phase_transform: mode must be 0 or 1");
  if (!std::isfinite(phi)) throw NonFiniteError("phase_transform: phi must be finite");
  std::map<OccPair, Complex> out;
  for (const auto& [occ, amp] : state.amplitudes()) {
    const int n = mode == 0 ? occ.n_first : occ.n_second;
    out[occ] = amp * std::polar(1.0, static_cast<double>(n) * phi);
  }
  return FockState(std::move(out), state.cutoff());
}

double coincidence_prob(const FockState& state) { return std::norm(state.amplitude({1, 1})); }

std::pair<double, double> bunching_probs(const FockState& state) {
  return {std::norm(state.amplitude({2, 0})), std::norm(state.amplitude({0, 2}))};
}

std::pair<double, double> single_photon_mzi(double zeta) {
  FockState s = FockState::basis(1, 0);
  s = bs_transform(s, BasisSign::Plus);
  s = phase_transform(s, 1, zeta);
  s = bs_transform(s, BasisSign::Plus);
  return {std::norm(s.amplitude({1, 0})), std::norm(s.amplitude({0, 1}))};
}

Eigen::Vector2d mean_occupations(const FockState& state) {
  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (const auto& [occ, amp] : state.amplitudes()) {
    const double p = std::norm(amp);
    out[0] += p * occ.n_first;
    out[1] += p * occ.n_second;
  }
  return out;
}

}  // namespace homsim
