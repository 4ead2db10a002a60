#include "homsim/numerics.hpp"
#include "homsim/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <limits>

using namespace homsim;

namespace {

Complex random_amp(SplitMix64& rng) {
  return {2.0 * rng.next_unit() - 1.0, 2.0 * rng.next_unit() - 1.0};
}

FieldVector random_vector(SplitMix64& rng) { return {random_amp(rng), random_amp(rng)}; }

}  // namespace

TEST_SUITE_BEGIN("numerics");

TEST_CASE("bs_matrix entries per convention") {
  const ElementMatrix plus_u = bs_matrix(BasisSign::Plus, Convention::Unitary);
  CHECK(plus_u.m(0, 0) == Complex{kInvSqrt2, 0.0});
  CHECK(plus_u.m(0, 1) == Complex{0.0, kInvSqrt2});
  CHECK(plus_u.m(1, 0) == Complex{0.0, kInvSqrt2});
  CHECK(plus_u.m(1, 1) == Complex{kInvSqrt2, 0.0});
  CHECK(!plus_u.non_unitary);

  const ElementMatrix minus_p = bs_matrix(BasisSign::Minus, Convention::PaperLiteral);
  CHECK(minus_p.m(0, 0) == Complex{1.0, 0.0});
  CHECK(minus_p.m(0, 1) == Complex{0.0, -1.0});
  CHECK(minus_p.m(1, 0) == Complex{0.0, -1.0});
  CHECK(minus_p.m(1, 1) == Complex{1.0, 0.0});
}

TEST_CASE("basis sign negation is an involution") {
  CHECK(negate(BasisSign::Plus) == BasisSign::Minus);
  CHECK(negate(BasisSign::Minus) == BasisSign::Plus);
  CHECK(negate(negate(BasisSign::Plus)) == BasisSign::Plus);
  CHECK(sign_value(BasisSign::Plus) == 1.0);
  CHECK(sign_value(BasisSign::Minus) == -1.0);
}

TEST_CASE("bs_matrix unitarity") {
  CHECK(is_unitary(bs_matrix(BasisSign::Plus, Convention::Unitary).m));
  CHECK(is_unitary(bs_matrix(BasisSign::Minus, Convention::Unitary).m));
  CHECK(!is_unitary(bs_matrix(BasisSign::Plus, Convention::PaperLiteral).m));
}

TEST_CASE("phase_matrix basics") {
  CHECK(phase_matrix(1, 0.0).m == Matrix2c::Identity());

  const Matrix2c at_pi = phase_matrix(1, kPi).m;
  CHECK(std::abs(at_pi(1, 1) - Complex{-1.0, 0.0}) < 1e-15);
  CHECK(at_pi(0, 0) == Complex{1.0, 0.0});

  const Matrix2c at_half = phase_matrix(1, kPi / 2).m;
  CHECK(std::abs(at_half(1, 1) - Complex{0.0, 1.0}) < 1e-15);

  const Matrix2c on_first = phase_matrix(0, kPi / 2).m;
  CHECK(std::abs(on_first(0, 0) - Complex{0.0, 1.0}) < 1e-15);
  CHECK(on_first(1, 1) == Complex{1.0, 0.0});

  CHECK(is_unitary(phase_matrix(1, 1.234).m));
}

TEST_CASE("phase_matrix rejects bad input") {
  CHECK_THROWS_AS(phase_matrix(1, std::numeric_limits<double>::quiet_NaN()), NonFiniteError);
  CHECK_THROWS_AS(phase_matrix(1, std::numeric_limits<double>::infinity()), NonFiniteError);
  CHECK_THROWS_AS(phase_matrix(2, 0.0), std::out_of_range);
}

TEST_CASE("compose of identities and order") {
  const ElementMatrix ident = phase_matrix(0, 0.0);
  CHECK(compose({ident, ident}).m == Matrix2c::Identity());

  // first element applied first: P(pi/2) after BS differs from BS after P
  const ElementMatrix bs = bs_matrix(BasisSign::Plus);
  const ElementMatrix ph = phase_matrix(1, kPi / 2);
  CHECK((compose({bs, ph}).m - ph.m * bs.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compose reproduces the MZI products") {
  // frozen from plain 2x2 multiplication: BS * P(0) * BS = i * swap
  const oracle::M2 prod0 = oracle::mul(oracle::bs(1.0, true),
                                       oracle::mul(oracle::phase_second(0.0), oracle::bs(1.0, true)));
  CHECK(std::abs(prod0.a) < 1e-15);
  CHECK(std::abs(prod0.b - oracle::C{0.0, 1.0}) < 1e-15);

  const ElementMatrix mzi0 = compose(
      {bs_matrix(BasisSign::Plus), phase_matrix(1, 0.0), bs_matrix(BasisSign::Plus)});
  Matrix2c swap;
  swap << 0, 1, 1, 0;
  CHECK(equal_up_to_global_phase(mzi0.m, swap));

  // zeta = pi sends [1;0] to [+-1;0] up to global phase
  const ElementMatrix mzi_pi = compose(
      {bs_matrix(BasisSign::Plus), phase_matrix(1, kPi), bs_matrix(BasisSign::Plus)});
  const FieldVector out = apply_element(mzi_pi, FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  CHECK(equal_up_to_global_phase(out, FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}}));
}

TEST_CASE("compose rejects mixed conventions and empty input") {
  CHECK_THROWS_AS(compose({bs_matrix(BasisSign::Plus, Convention::Unitary),
                           bs_matrix(BasisSign::Plus, Convention::PaperLiteral)}),
                  ConventionMismatchError);
  CHECK_THROWS_AS(compose({}), std::invalid_argument);
}

TEST_CASE("compose propagates non_unitary by OR") {
  ElementMatrix tagged = phase_matrix(0, 0.0);
  tagged.non_unitary = true;
  CHECK(compose({phase_matrix(0, 0.0), tagged}).non_unitary);
  CHECK(!compose({phase_matrix(0, 0.0), phase_matrix(1, 1.0)}).non_unitary);
}

TEST_CASE("apply_element matches the direct product") {
  const ElementMatrix ident = phase_matrix(0, 0.0);
  const FieldVector in{Complex{3.0, 0.0}, Complex{0.0, 0.0}};
  CHECK(apply_element(ident, in) == in);
  CHECK(ident * in == in);  // operator* spelling

  // (bs(+,U), [1; e^{i theta}]) -> (1/sqrt2) [1 + i e^{i theta}; i + e^{i theta}]
  const double theta = 0.83;
  const Complex eith = std::polar(1.0, theta);
  const FieldVector got = apply_element(bs_matrix(BasisSign::Plus), FieldVector{Complex{1.0, 0.0}, eith});
  const Complex i{0.0, 1.0};
  CHECK(std::abs(got[0] - kInvSqrt2 * (1.0 + i * eith)) < 1e-15);
  CHECK(std::abs(got[1] - kInvSqrt2 * (i + eith)) < 1e-15);

  // one input: equal split with i on the reflected path
  const FieldVector one = apply_element(bs_matrix(BasisSign::Plus), FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
  CHECK(std::abs(one[0] - Complex{kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(one[1] - Complex{0.0, kInvSqrt2}) < 1e-15);
}

TEST_CASE("apply_element agrees with the plain-complex oracle on random inputs") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const double sign = rng.next_unit() < 0.5 ? 1.0 : -1.0;
    const FieldVector v = random_vector(rng);
    const FieldVector got =
        apply_element(bs_matrix(sign > 0 ? BasisSign::Plus : BasisSign::Minus), v);
    const auto want = oracle::mulv(oracle::bs(sign, true), {v[0], v[1]});
    CHECK(std::abs(got[0] - want[0]) < 1e-15);
    CHECK(std::abs(got[1] - want[1]) < 1e-15);
  }
}

TEST_CASE("intensities") {
  CHECK(intensities(FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}}) == Eigen::Vector2d{1.0, 0.0});

  const FieldVector quad = apply_element(
      bs_matrix(BasisSign::Plus), FieldVector{Complex{1.0, 0.0}, std::polar(1.0, kPi / 2)});
  const Eigen::Vector2d i_quad = intensities(quad);
  CHECK(std::abs(i_quad[0]) < 1e-12);
  CHECK(std::abs(i_quad[1] - 2.0) < 1e-12);

  const Eigen::Vector2d i_zero =
      intensities(apply_element(bs_matrix(BasisSign::Plus), FieldVector{Complex{1.0, 0.0}, Complex{1.0, 0.0}}));
  CHECK(std::abs(i_zero[0] - 1.0) < 1e-12);
  CHECK(std::abs(i_zero[1] - 1.0) < 1e-12);
}

TEST_CASE("energy conservation through unitary chains") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const FieldVector v = random_vector(rng);
    const ElementMatrix chain =
        compose({bs_matrix(rng.next_unit() < 0.5 ? BasisSign::Plus : BasisSign::Minus),
                 phase_matrix(1, kTwoPi * rng.next_unit()),
                 bs_matrix(rng.next_unit() < 0.5 ? BasisSign::Plus : BasisSign::Minus),
                 phase_matrix(0, kTwoPi * rng.next_unit())});
    CHECK(intensities(apply_element(chain, v)).sum() ==
          doctest::Approx(intensities(v).sum()).epsilon(1e-12));
  }
}

TEST_CASE("conjugate beam splitters compose to the identity up to phase") {
  const ElementMatrix prod =
      compose({bs_matrix(BasisSign::Plus), bs_matrix(BasisSign::Minus)});
  CHECK(global_phase_distance(prod.m, Matrix2c::Identity()) < 1e-12);
}

TEST_CASE("apply_element is linear") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ElementMatrix m = bs_matrix(BasisSign::Plus);
    const FieldVector v = random_vector(rng);
    const FieldVector w = random_vector(rng);
    const Complex alpha = random_amp(rng);
    const FieldVector lhs = apply_element(m, alpha * v + w);
    const FieldVector rhs = alpha * apply_element(m, v) + apply_element(m, w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("paper-literal intensities are twice the unitary ones") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const FieldVector v = random_vector(rng);
    const Eigen::Vector2d unit = intensities(apply_element(bs_matrix(BasisSign::Plus, Convention::Unitary), v));
    const Eigen::Vector2d paper =
        intensities(apply_element(bs_matrix(BasisSign::Plus, Convention::PaperLiteral), v));
    CHECK((paper - 2.0 * unit).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("global phase metric") {
  const Matrix2c b = bs_matrix(BasisSign::Plus).m;
  CHECK(global_phase_distance(b, b) == 0.0);
  CHECK(equal_up_to_global_phase(b, Matrix2c(std::polar(1.0, 1.1) * b)));
  CHECK(!equal_up_to_global_phase(b, Matrix2c::Identity()));
  CHECK(!equal_up_to_global_phase(b, Matrix2c(2.0 * b)));  // modulus matters
}

TEST_CASE("non-finite amplitudes are rejected") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(apply_element(bs_matrix(BasisSign::Plus), FieldVector{Complex{nan, 0.0}, Complex{0.0, 0.0}}),
                  NonFiniteError);
  CHECK_THROWS_AS(intensities(FieldVector{Complex{0.0, nan}, Complex{0.0, 0.0}}), NonFiniteError);
}

TEST_SUITE_END();
