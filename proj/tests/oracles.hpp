#pragma once

// Test-only oracles, deliberately independent of the library code paths:
// plain std::complex 2x2 arithmetic (no Eigen) and a dense Fock-space
// beam-splitter expansion built by applying creation operators one at a time
// instead of the library's closed binomial formula.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;

// row-major [[a, b], [c, d]]
struct M2 {
  C a, b, c, d;
};

inline M2 mul(const M2& x, const M2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline std::array<C, 2> mulv(const M2& m, const std::array<C, 2>& v) {
  return {m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1]};
}

inline M2 bs(double sign, bool unitary) {
  const C si{0.0, sign};
  const double k = unitary ? 1.0 / std::sqrt(2.0) : 1.0;
  return {k * C{1.0, 0.0}, k * si, k * si, k * C{1.0, 0.0}};
}

inline M2 phase_second(double phi) {
  return {C{1.0, 0.0}, C{0.0, 0.0}, C{0.0, 0.0}, std::polar(1.0, phi)};
}

// ---- dense two-mode Fock expansion -------------------------------------

constexpr int kDim = 9;  // occupations 0..8 per mode

struct Dense {
  std::array<std::array<C, kDim>, kDim> amp{};  // amp[n_first][n_second]
};

// applies (x * c^ + y * d^) once
inline Dense raise(const Dense& in, const C& x, const C& y) {
  Dense out;
  for (int n = 0; n + 1 < kDim; ++n) {
    for (int m = 0; m + 1 < kDim; ++m) {
      const C a = in.amp[n][m];
      if (a == C{0.0, 0.0}) continue;
      out.amp[n + 1][m] += x * std::sqrt(n + 1.0) * a;
      out.amp[n][m + 1] += y * std::sqrt(m + 1.0) * a;
    }
  }
  return out;
}

// |n_a, n_b> through a beam splitter with operator map
// a^ -> (c^ + s i d^)/sqrt(2), b^ -> (s i c^ + d^)/sqrt(2)
inline Dense bs_expand(int n_a, int n_b, double sign) {
  const double k = 1.0 / std::sqrt(2.0);
  const C si{0.0, sign};
  Dense st;
  st.amp[0][0] = C{1.0, 0.0};
  for (int i = 0; i < n_a; ++i) st = raise(st, k * C{1.0, 0.0}, k * si);
  for (int i = 0; i < n_b; ++i) st = raise(st, k * si, k * C{1.0, 0.0});
  double fact = 1.0;
  for (int i = 2; i <= n_a; ++i) fact *= i;
  for (int i = 2; i <= n_b; ++i) fact *= i;
  const double norm = 1.0 / std::sqrt(fact);
  Dense out;
  for (int n = 0; n < kDim; ++n)
    for (int m = 0; m < kDim; ++m) out.amp[n][m] = st.amp[n][m] * norm;
  return out;
}

}  // namespace oracle
