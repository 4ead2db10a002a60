#include "homsim/phase_basis.hpp"

#include "homsim/wave.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace homsim {

std::array<BasisCase, 8> all_basis_cases() {
  std::array<BasisCase, 8> out;
  int i = 0;
  for (const BasisRelation rel : {BasisRelation::Same, BasisRelation::Opposite})
    for (const BasisCombination comb : {BasisCombination::Symmetric, BasisCombination::Antisymmetric})
      for (const BasisSign sign : {BasisSign::Plus, BasisSign::Minus})
        out[i++] = BasisCase{rel, comb, sign};
  return out;
}

std::string case_token(const BasisCase& c) {
  std::string out = c.relation == BasisRelation::Same ? "same_" : "opp_";
  out += c.combination == BasisCombination::Symmetric ? "sym_" : "anti_";
  out += c.primary_sign == BasisSign::Plus ? "plus" : "minus";
  return out;
}

BasisCase case_from_token(std::string_view token) {
  for (const BasisCase& c : all_basis_cases())
    if (case_token(c) == token) return c;
  throw std::invalid_argument("unknown superposition case '" + std::string(token) + "'");
}

std::string case_label(const BasisCase& c) {
  std::string out = c.relation == BasisRelation::Same ? "same/" : "opposite/";
  out += c.combination == BasisCombination::Symmetric ? "symmetric/" : "antisymmetric/";
  out += to_string(c.primary_sign);
  return out;
}

std::string rule_label(const Bs1Rule& r) {
  return (r.kind == Bs1Rule::Kind::PlainBs ? std::string("plain(") : std::string("superposed(")) +
         to_string(r.sign) + ")";
}

ElementMatrix superposed_matrix(const BasisCase& c, Convention conv) {
  if (c.degenerate())
    throw DegenerateCaseError(
        "superposed_matrix: same-basis antisymmetric mix cancels to the zero matrix");

  const BasisSign second_sign =
      c.relation == BasisRelation::Same ? c.primary_sign : negate(c.primary_sign);
  const double comb = c.combination == BasisCombination::Symmetric ? 1.0 : -1.0;
  const Matrix2c mix =
      0.5 * (bs_matrix(c.primary_sign, conv).m + comb * bs_matrix(second_sign, conv).m);

  // Conserving at the convention's single-element scale? A plain BS satisfies
  // M^+ M = I (Unitary) or 2I (PaperLiteral); mixes that fall short are
  // reported, never renormalized.
  const double scale = conv == Convention::Unitary ? 1.0 : 2.0;
  const bool non_unitary =
      (mix.adjoint() * mix - scale * Matrix2c::Identity()).cwiseAbs().maxCoeff() > 1e-12;
  return {mix, conv, non_unitary};
}

HomCaseResult evaluate_hom_case(const BasisCase& c, double theta, Convention conv) {
  if (!std::isfinite(theta)) throw NonFiniteError("evaluate_hom_case: theta must be finite");
  const ElementMatrix mix = superposed_matrix(c, conv);
  const FieldVector in{Complex{1.0, 0.0}, std::polar(1.0, theta)};
  const Eigen::Vector2d i = intensities(apply_element(mix, in));
  return {i[0], i[1], coincidence_normalized(i[0], i[1]).r_value};
}

FieldVector one_input_bs_case(BasisSign combination, Convention conv) {
  const BasisCombination comb = combination == BasisSign::Plus ? BasisCombination::Symmetric
                                                               : BasisCombination::Antisymmetric;
  const BasisCase c{BasisRelation::Opposite, comb, BasisSign::Plus};
  return apply_element(superposed_matrix(c, conv), FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}});
}

MziCaseResult evaluate_mzi_case(const Bs1Rule& bs1, const BasisCase& bs2, double zeta,
                                Convention conv) {
  if (bs2.degenerate())
    throw DegenerateCaseError("evaluate_mzi_case: degenerate BS2 superposition");

  FieldVector v = bs1.kind == Bs1Rule::Kind::PlainBs
                      ? apply_element(bs_matrix(bs1.sign, conv), FieldVector{Complex{1.0, 0.0}, Complex{0.0, 0.0}})
                      : one_input_bs_case(bs1.sign, conv);
  v = apply_element(phase_matrix(1, zeta, conv), v);

  Eigen::Vector2d out;
  if (bs2.relation == BasisRelation::Same) {
    out = intensities(apply_element(superposed_matrix(bs2, conv), v));
  } else {
    // The opposite superposition splits into its summed (identity-like) and
    // differenced (swap-like) branches with equal probability; report the
    // branch-ensemble mean intensities.
    const BasisCase sym{BasisRelation::Opposite, BasisCombination::Symmetric, bs2.primary_sign};
    const BasisCase anti{BasisRelation::Opposite, BasisCombination::Antisymmetric,
                         bs2.primary_sign};
    out = 0.5 * (intensities(apply_element(superposed_matrix(sym, conv), v)) +
                 intensities(apply_element(superposed_matrix(anti, conv), v)));
  }
  return {out[0], out[1], coincidence_normalized(out[0], out[1]).r_value};
}

namespace {

constexpr double kDirectionalTol = 1e-10;

bool directional_under(const Bs1Rule& rule, const BasisCase& c) {
  const MziCaseResult at0 = evaluate_mzi_case(rule, c, 0.0);
  const MziCaseResult atPi = evaluate_mzi_case(rule, c, kPi);
  return at0.i_e <= kDirectionalTol && atPi.i_f <= kDirectionalTol;
}

}  // namespace

std::vector<CaseVerdict> classify_all() {
  std::vector<CaseVerdict> out;
  for (const BasisCase& c : all_basis_cases()) {
    CaseVerdict v;
    v.basis_case = c;
    if (c.degenerate()) {
      v.degenerate = true;
      v.hom_r_at_quadrature = std::numeric_limits<double>::quiet_NaN();
      v.mzi_directional = false;
      v.allowed = false;
      v.notes = "degenerate: the two phase-basis matrices cancel; no action";
      out.push_back(std::move(v));
      continue;
    }

    v.hom_r_at_quadrature = evaluate_hom_case(c, kPi / 2.0).r;
    const bool hom_ok = v.hom_r_at_quadrature < kDirectionalTol;

    std::vector<Bs1Rule> rules;
    if (c.relation == BasisRelation::Same) {
      rules = {Bs1Rule::plain(c.primary_sign)};
    } else {
      rules = {Bs1Rule::plain(BasisSign::Plus), Bs1Rule::plain(BasisSign::Minus),
               Bs1Rule::superposed(BasisSign::Plus), Bs1Rule::superposed(BasisSign::Minus)};
    }
    std::vector<std::string> failed;
    for (const Bs1Rule& rule : rules)
      if (!directional_under(rule, c)) failed.push_back(rule_label(rule));
    v.mzi_directional = failed.empty();
    v.allowed = hom_ok && v.mzi_directional;

    std::ostringstream notes;
    notes << (hom_ok ? "HOM R=0 at quadrature" : "HOM R=1 at quadrature; violates photon bunching");
    if (v.mzi_directional) {
      notes << "; MZI directional under " << rule_label(rules.front());
    } else {
      notes << "; MZI not directional under";
      for (std::size_t i = 0; i < failed.size(); ++i) notes << (i ? " " : " ") << failed[i];
    }
    v.notes = notes.str();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace homsim
