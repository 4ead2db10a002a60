#pragma once

// Phase-basis superposition engine: amplitude-level mixing of the two
// beam-splitter phase choices, evaluation of every mixing case on the
// two-input BS scheme and the MZI scheme, and the allowed/forbidden
// classifier.

#include "homsim/numerics.hpp"

#include <array>
#include <string>
#include <vector>

namespace homsim {

struct DegenerateCaseError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class BasisRelation { Same, Opposite };
enum class BasisCombination { Symmetric, Antisymmetric };

// One way of superposing the two phase-basis matrices B+ and B-:
// Same mixes a sign with itself, Opposite mixes the two signs; Symmetric adds,
// Antisymmetric subtracts. primary_sign picks the sign (Same) or which matrix
// comes first (Opposite). Same+Antisymmetric cancels to the zero matrix and is
// degenerate.
struct BasisCase {
  BasisRelation relation = BasisRelation::Same;
  BasisCombination combination = BasisCombination::Symmetric;
  BasisSign primary_sign = BasisSign::Plus;

  bool degenerate() const {
    return relation == BasisRelation::Same && combination == BasisCombination::Antisymmetric;
  }
  auto operator<=>(const BasisCase&) const = default;
};

std::array<BasisCase, 8> all_basis_cases();

// Compact token, e.g. "same_sym_plus", used by the circuit DSL and CSV output.
std::string case_token(const BasisCase& c);
// Inverse of case_token; throws std::invalid_argument on unknown tokens.
BasisCase case_from_token(std::string_view token);
// Human-readable form, e.g. "same/symmetric/+".
std::string case_label(const BasisCase& c);

// (1/2)(B_first +- B_second) at the requested convention. Same/Symmetric
// reproduces the plain BS matrix; the Opposite mixes collapse to
// identity-proportional (Symmetric) or swap-proportional (Antisymmetric)
// matrices and are flagged non_unitary. Throws DegenerateCaseError for
// Same/Antisymmetric.
ElementMatrix superposed_matrix(const BasisCase& c, Convention conv = Convention::Unitary);

struct HomCaseResult {
  double i_c = 0.0;
  double i_d = 0.0;
  double r = 0.0;
};

// Superposed matrix applied to [E0; E0 e^{i theta}].
HomCaseResult evaluate_hom_case(const BasisCase& c, double theta,
                                Convention conv = Convention::Unitary);

// One-input beam splitter under the superposed matrices: Plus applies
// (1/2)(B+ + B-) and puts all amplitude in the first output port, Minus
// applies (1/2)(B+ - B-) and puts it in the second.
FieldVector one_input_bs_case(BasisSign combination, Convention conv = Convention::Unitary);

// How the first MZI beam splitter is modeled: as a plain BS of a given sign,
// or as a one-input superposition (Plus = summed, Minus = differenced).
struct Bs1Rule {
  enum class Kind { PlainBs, Superposed };
  Kind kind = Kind::PlainBs;
  BasisSign sign = BasisSign::Plus;

  static Bs1Rule plain(BasisSign s) { return {Kind::PlainBs, s}; }
  static Bs1Rule superposed(BasisSign s) { return {Kind::Superposed, s}; }
};

std::string rule_label(const Bs1Rule& r);

struct MziCaseResult {
  double i_e = 0.0;
  double i_f = 0.0;
  double r_ef = 0.0;
};

// BS1 rule, phase zeta on the second path, then the BS2 superposition, on
// input [E0; 0]. A Same-relation BS2 is a single composition. An
// Opposite-relation BS2 carries its summed and differenced branches with
// equal weight, so the reported intensities are the two-branch ensemble
// means; they are zeta-independent and give R_ef = 1.
MziCaseResult evaluate_mzi_case(const Bs1Rule& bs1, const BasisCase& bs2, double zeta,
                                Convention conv = Convention::Unitary);

struct CaseVerdict {
  BasisCase basis_case;
  double hom_r_at_quadrature = 0.0;  // NaN for the degenerate case
  bool mzi_directional = false;
  bool allowed = false;
  bool degenerate = false;
  std::string notes;
};

// Verdict for every basis case: allowed iff the HOM coincidence vanishes at
// theta = pi/2 and the MZI stays directional (no output in port e at zeta = 0
// and none in port f at zeta = pi, to 1e-10). Same-relation cases are checked
// under the plain BS1 composition; Opposite-relation cases must survive every
// supported BS1 rule. Exactly the two Same/Symmetric cases pass.
std::vector<CaseVerdict> classify_all();

}  // namespace homsim
