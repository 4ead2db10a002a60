#pragma once

// Two-port complex optics primitives: beam-splitter and phase-shifter
// matrices, composition and application, per-port intensities, and comparison
// up to a global phase. Everything is a value type; all functions are pure.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace homsim {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

// Per-port field amplitudes in units of sqrt(I0). Port order is fixed
// lexicographically: index 0 holds a/c/e, index 1 holds b/d/f.
using FieldVector = Vector2c;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

// Scaling convention for element matrices. Unitary carries the 1/sqrt(2)
// prefactor on beam splitters and conserves total intensity; PaperLiteral
// keeps the unnormalized integer entries [[1, +-i], [+-i, 1]] so amplitudes
// can be cross-checked against values printed without a prefactor.
enum class Convention { Unitary, PaperLiteral };

// The two quantized phases a balanced beam splitter can impose between its
// transmitted and reflected paths: Plus <-> +pi/2, Minus <-> -pi/2.
enum class BasisSign { Plus, Minus };

inline BasisSign negate(BasisSign s) {
  return s == BasisSign::Plus ? BasisSign::Minus : BasisSign::Plus;
}

inline double sign_value(BasisSign s) { return s == BasisSign::Plus ? 1.0 : -1.0; }

const char* to_string(BasisSign s);
const char* to_string(Convention c);

struct NonFiniteError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConventionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A 2x2 transfer matrix plus the convention its entries are scaled to.
// non_unitary marks matrices that do not conserve intensity at their
// convention's single-element scale (superposed basis mixtures); compose()
// propagates the flag by OR.
struct ElementMatrix {
  Matrix2c m = Matrix2c::Identity();
  Convention convention = Convention::Unitary;
  bool non_unitary = false;
};

inline bool finite_amp(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

bool all_finite(const Matrix2c& m);
bool all_finite(const Vector2c& v);

// Balanced beam splitter [[1, s*i], [s*i, 1]], scaled by 1/sqrt(2) under the
// Unitary convention.
ElementMatrix bs_matrix(BasisSign sign, Convention conv = Convention::Unitary);

// Phase shifter diag(e^{i phi}, 1) or diag(1, e^{i phi}); port 0 is the
// first of the pair (a/c/e), port 1 the second (b/d/f). Always unitary.
ElementMatrix phase_matrix(int port, double phi, Convention conv = Convention::Unitary);

// Product of a chain of elements, first entry applied first. All entries must
// share one convention.
ElementMatrix compose(const std::vector<ElementMatrix>& mats);

FieldVector apply_element(const ElementMatrix& m, const FieldVector& v);

inline FieldVector operator*(const ElementMatrix& m, const FieldVector& v) {
  return apply_element(m, v);
}

// |amp|^2 per port, in units of I0.
Eigen::Vector2d intensities(const FieldVector& v);

bool is_unitary(const Matrix2c& m, double tol = 1e-12);

// Shortest text with 17 significant digits ("%.17g"); round-trips exactly.
std::string format_g17(double x);

// min over unit-modulus lambda of ||a - lambda*b||_F. Zero iff a and b agree
// up to a global phase. The minimizing lambda is computed from the Frobenius
// overlap and the norm is then taken on the explicit difference, which stays
// accurate when a and b already nearly coincide.
template <typename DerivedA, typename DerivedB>
double global_phase_distance(const Eigen::MatrixBase<DerivedA>& a,
                             const Eigen::MatrixBase<DerivedB>& b) {
  const Complex overlap = a.derived().conjugate().cwiseProduct(b.derived()).sum();
  const double mag = std::abs(overlap);
  const Complex lambda = mag > 0.0 ? Complex(std::conj(overlap) / mag) : Complex{1.0, 0.0};
  return (a.derived() - lambda * b.derived()).norm();
}

template <typename DerivedA, typename DerivedB>
bool equal_up_to_global_phase(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b,
                              double tol = 1e-10) {
  return global_phase_distance(a, b) < tol;
}

}  // namespace homsim
