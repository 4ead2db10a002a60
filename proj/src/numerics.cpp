#include "homsim/numerics.hpp"

#include <cstdio>

namespace homsim {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* to_string(BasisSign s) { return s == BasisSign::Plus ? "+" : "-"; }

const char* to_string(Convention c) {
  return c == Convention::Unitary ? "unitary" : "paper_literal";
}

bool all_finite(const Matrix2c& m) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      if (!finite_amp(m(r, c))) return false;
  return true;
}

bool all_finite(const Vector2c& v) { return finite_amp(v(0)) && finite_amp(v(1)); }

ElementMatrix bs_matrix(BasisSign sign, Convention conv) {
  const Complex si{0.0, sign_value(sign)};
  Matrix2c b;
  b << Complex{1.0, 0.0}, si, si, Complex{1.0, 0.0};
  if (conv == Convention::Unitary) b *= kInvSqrt2;
  return {b, conv, false};
}

ElementMatrix phase_matrix(int port, double phi, Convention conv) {
  if (!std::isfinite(phi)) throw NonFiniteError("phase_matrix: phi must be finite");
  if (port != 0 && port != 1) throw std::out_of_range("phase_matrix: port must be 0 or 1");
  Matrix2c p = Matrix2c::Identity();
  p(port, port) = std::polar(1.0, phi);
  return {p, conv, false};
}

ElementMatrix compose(const std::vector<ElementMatrix>& mats) {
  if (mats.empty()) throw std::invalid_argument("compose: empty element sequence");
  ElementMatrix out = mats.front();
  for (std::size_t k = 1; k < mats.size(); ++k) {
    if (mats[k].convention != out.convention)
      throw ConventionMismatchError("compose: elements mix scaling conventions");
    out.m = mats[k].m * out.m;  // later elements act from the left
    out.non_unitary = out.non_unitary || mats[k].non_unitary;
  }
  return out;
}

FieldVector apply_element(const ElementMatrix& m, const FieldVector& v) {
  if (!all_finite(m.m) || !all_finite(v))
    throw NonFiniteError("apply: non-finite amplitude");
  return m.m * v;
}

Eigen::Vector2d intensities(const FieldVector& v) {
  if (!all_finite(v)) throw NonFiniteError("intensities: non-finite amplitude");
  return v.cwiseAbs2();
}

bool is_unitary(const Matrix2c& m, double tol) {
  return (m.adjoint() * m - Matrix2c::Identity()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace homsim
