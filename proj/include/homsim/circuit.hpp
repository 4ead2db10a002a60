#pragma once

// Line-oriented text format for interferometer scenarios (".circ" files) and
// its parser. Grammar, one statement per line, '#' starts a comment:
//
//   file   = header stmt+
//   header = "circuit" NAME
//   stmt   = input | elem | detect
//   input  = "in" PORT AMP            AMP = NUM | [NUM "*"] "exp(i*" ANGLE ")"
//   elem   = "bs" SIGN                SIGN = "+" | "-"
//          | "bs" "superposed" CASE   CASE = same_sym_plus, opp_anti_minus, ...
//          | "phase" PORT ANGLE
//   detect = "detect" PORT PORT
//
// ANGLE is a radian literal ("1.57", "pi", "pi/2", "-pi/2", "2pi", "2*pi") or
// one of the parameters theta / zeta. Ports are the fixed letters a..f:
// a/b enter the first layer, each "bs" advances to the next pair (c/d, then
// e/f), "phase" acts on a port of the current layer, detectors sit on the
// final layer.

#include "homsim/numerics.hpp"
#include "homsim/phase_basis.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace homsim {

struct UnknownBuiltinError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Radian literal or named parameter (theta/zeta at validation time).
struct PhaseExpr {
  enum class Kind { Literal, Parameter };
  Kind kind = Kind::Literal;
  double value = 0.0;
  std::string name;

  static PhaseExpr literal(double v) { return {Kind::Literal, v, {}}; }
  static PhaseExpr parameter(std::string n) { return {Kind::Parameter, 0.0, std::move(n)}; }
  bool operator==(const PhaseExpr&) const = default;
};

// coefficient * e^{i phase}
struct AmpExpr {
  double coefficient = 1.0;
  PhaseExpr phase = PhaseExpr::literal(0.0);
  bool operator==(const AmpExpr&) const = default;
};

struct InputSpec {
  char port = 'a';
  AmpExpr amp;
  bool operator==(const InputSpec&) const = default;
};

struct BsElement {
  bool superposed = false;
  BasisSign sign = BasisSign::Plus;  // plain form
  BasisCase basis_case;              // superposed form
  bool operator==(const BsElement&) const = default;
};

struct PhaseElement {
  char port = 'd';
  PhaseExpr phi;
  bool operator==(const PhaseElement&) const = default;
};

using Element = std::variant<BsElement, PhaseElement>;

struct Circuit {
  std::string name;
  std::vector<InputSpec> inputs;
  std::vector<Element> elements;
  std::array<char, 2> detectors = {0, 0};
  bool operator==(const Circuit&) const = default;
};

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  std::string message;
  std::string snippet;  // the offending source line
};

using ParseResult = std::variant<Circuit, ParseError>;

ParseResult parse(std::string_view source);

inline bool parse_ok(const ParseResult& r) { return std::holds_alternative<Circuit>(r); }

// Canonical builtin scenarios: "hom", "mzi", "one_input_bs".
Circuit builtin(std::string_view name);
bool is_builtin(std::string_view name);

// Canonical text form; parse(render(c)) is structurally identical to c for
// every valid circuit.
std::string render(const Circuit& c);

struct ValidationError {
  std::string message;
  int element_index = -1;  // -1 when not tied to one element
};

std::optional<ValidationError> validate(const Circuit& c);

// Angle literals accepted by the DSL and the CLI flags: raw radians plus the
// pi forms above. Returns nullopt when the text is not an angle.
std::optional<double> parse_angle_token(std::string_view text);

}  // namespace homsim
