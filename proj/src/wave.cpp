#include "homsim/wave.hpp"

#include "homsim/rng.hpp"

#include <future>

namespace homsim {

double reduce_angle(double x) {
  if (!std::isfinite(x)) throw NonFiniteError("reduce_angle: non-finite angle");
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

RelativePhase RelativePhase::with_theta(double t) { return RelativePhase().set_theta(t); }
RelativePhase RelativePhase::with_zeta(double z) { return RelativePhase().set_zeta(z); }

RelativePhase& RelativePhase::set_theta(double t) {
  theta_ = reduce_angle(t);
  return *this;
}

RelativePhase& RelativePhase::set_zeta(double z) {
  zeta_ = reduce_angle(z);
  return *this;
}

PhaseDistribution PhaseDistribution::fixed(double theta) {
  return {PhaseDistKind::FixedTheta, reduce_angle(theta)};
}

Eigen::Vector2d hom_outputs(double theta, BasisSign sign) {
  if (!std::isfinite(theta)) throw NonFiniteError("hom_outputs: theta must be finite");
  const double s = sign_value(sign) * std::sin(theta);
  const Eigen::Vector2d closed{1.0 - s, 1.0 + s};

  const FieldVector in{Complex{1.0, 0.0}, std::polar(1.0, theta)};
  const Eigen::Vector2d routed = intensities(apply_element(bs_matrix(sign), in));
  if ((routed - closed).cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("hom_outputs: matrix route disagrees with closed form");
  return closed;
}

CoincidenceStat coincidence_normalized(double i_c, double i_d) {
  if (!(i_c >= 0.0) || !(i_d >= 0.0))
    throw std::invalid_argument("coincidence_normalized: intensities must be >= 0");
  const double total = i_c + i_d;
  if (!(total > 0.0))
    throw UndefinedCoincidenceError("coincidence_normalized: zero total intensity");
  const double mean = 0.5 * total;
  return {i_c * i_d / (mean * mean)};
}

namespace {

// Partial sums over a sample index range. Samples inside a leaf are summed in
// index order and leaves are combined left-then-right, so the result depends
// only on (seed, n), never on the worker count.
struct Accum {
  double i_c = 0.0;
  double i_d = 0.0;
  double r = 0.0;
  double r2 = 0.0;

  void add(const Accum& o) {
    i_c += o.i_c;
    i_d += o.i_d;
    r += o.r;
    r2 += o.r2;
  }
};

constexpr std::int64_t kLeafSamples = 64;

Accum accumulate_range(std::uint64_t seed, const PhaseDistribution& dist, std::int64_t lo,
                       std::int64_t hi, int async_depth) {
  if (hi - lo <= kLeafSamples) {
    Accum a;
    for (std::int64_t k = lo; k < hi; ++k) {
      const double theta = dist.kind == PhaseDistKind::UniformTheta
                               ? kTwoPi * SplitMix64::unit_at(seed, static_cast<std::uint64_t>(k))
                               : dist.fixed_theta;
      const Eigen::Vector2d out = hom_outputs(theta, BasisSign::Plus);
      a.i_c += out[0];
      a.i_d += out[1];
      const double r = coincidence_normalized(out[0], out[1]).r_value;
      a.r += r;
      a.r2 += r * r;
    }
    return a;
  }
  const std::int64_t mid = lo + (hi - lo) / 2;
  Accum left;
  Accum right;
  if (async_depth > 0) {
    auto task = std::async(std::launch::async, [&] {
      return accumulate_range(seed, dist, mid, hi, async_depth - 1);
    });
    left = accumulate_range(seed, dist, lo, mid, async_depth - 1);
    right = task.get();
  } else {
    left = accumulate_range(seed, dist, lo, mid, 0);
    right = accumulate_range(seed, dist, mid, hi, 0);
  }
  left.add(right);
  return left;
}

}  // namespace

EnsembleStats ensemble_average(std::string_view scenario, const PhaseDistribution& dist,
                               std::int64_t n, std::uint64_t seed, int workers) {
  if (scenario != "hom")
    throw UnknownScenarioError("ensemble_average: unknown scenario '" + std::string(scenario) + "'");
  if (n < 1) throw std::invalid_argument("ensemble_average: n must be >= 1");

  int depth = 0;
  while ((1 << depth) < workers && depth < 8) ++depth;
  const Accum a = accumulate_range(seed, dist, 0, n, depth);

  EnsembleStats st;
  st.n_samples = n;
  st.seed = seed;
  const double dn = static_cast<double>(n);
  st.mean_intensity = Eigen::Vector2d{a.i_c / dn, a.i_d / dn};
  st.mean_r = a.r / dn;
  st.var_r = std::max(0.0, a.r2 / dn - st.mean_r * st.mean_r);
  return st;
}

ElementMatrix mzi_transfer(double zeta, Convention conv) {
  return compose({bs_matrix(BasisSign::Plus, conv), phase_matrix(1, zeta, conv),
                  bs_matrix(BasisSign::Plus, conv)});
}

std::vector<FringePoint> mzi_fringe(std::span<const double> zeta_grid) {
  if (zeta_grid.empty()) throw std::invalid_argument("mzi_fringe: empty zeta grid");
  const FieldVector in{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  std::vector<FringePoint> out;
  out.reserve(zeta_grid.size());
  for (const double z : zeta_grid) {
    const Eigen::Vector2d i = intensities(apply_element(mzi_transfer(z), in));
    out.push_back({z, i[0], i[1]});
  }
  return out;
}

}  // namespace homsim
