#include "homsim/circuit.hpp"

#include <doctest.h>

#include <string>
#include <vector>

using namespace homsim;

namespace {

Circuit parse_ok_or_fail(std::string_view src) {
  ParseResult res = parse(src);
  if (const auto* err = std::get_if<ParseError>(&res))
    FAIL("unexpected parse error at ", err->line, ":", err->column, ": ", err->message);
  return std::get<Circuit>(std::move(res));
}

ParseError parse_expect_error(std::string_view src) {
  ParseResult res = parse(src);
  REQUIRE(!parse_ok(res));
  return std::get<ParseError>(std::move(res));
}

}  // namespace

TEST_SUITE_BEGIN("circuit");

TEST_CASE("parse the two canonical sources") {
  const Circuit hom = parse_ok_or_fail(
      "circuit hom\n"
      "in a 1\n"
      "in b exp(i*theta)\n"
      "bs +\n"
      "detect c d\n");
  CHECK(hom == builtin("hom"));

  const Circuit mzi = parse_ok_or_fail(
      "circuit mzi\n"
      "in a 1\n"
      "bs +\n"
      "phase d zeta\n"
      "bs +\n"
      "detect e f\n");
  CHECK(mzi == builtin("mzi"));
}

TEST_CASE("parse is whitespace and comment tolerant") {
  const Circuit c = parse_ok_or_fail(
      "# two-input splitter with a fixed offset\n"
      "circuit demo   # trailing comment\n"
      "\n"
      "in a 1\n"
      "in b  0.5 * exp( i * -pi/2 )\n"
      "bs -\n"
      "phase d 2pi\n"
      "detect c d\n");
  CHECK(c.name == "demo");
  REQUIRE(c.inputs.size() == 2);
  CHECK(c.inputs[1].amp.coefficient == 0.5);
  CHECK(c.inputs[1].amp.phase == PhaseExpr::literal(-kPi / 2));
  REQUIRE(c.elements.size() == 2);
  const auto& ph = std::get<PhaseElement>(c.elements[1]);
  CHECK(ph.port == 'd');
  CHECK(ph.phi == PhaseExpr::literal(2.0 * kPi));
}

TEST_CASE("parse superposed beam splitters") {
  const Circuit c = parse_ok_or_fail(
      "circuit sup\n"
      "in a 1\n"
      "bs superposed opp_anti_minus\n"
      "detect c d\n");
  const auto& bs = std::get<BsElement>(c.elements[0]);
  CHECK(bs.superposed);
  CHECK(bs.basis_case ==
        BasisCase{BasisRelation::Opposite, BasisCombination::Antisymmetric, BasisSign::Minus});
}

TEST_CASE("parse errors carry position and snippet") {
  struct Case {
    const char* src;
    int line;
    const char* needle;
  };
  const std::vector<Case> cases = {
      {"bs %", 1, "unknown sign"},
      {"circuit x\nin a 1\nbs *\ndetect c d", 3, "unknown sign"},
      {"circuit x\nin g 1\nbs +\ndetect c d", 2, "undeclared port"},
      {"circuit x\nin a 1x2\nbs +\ndetect c d", 2, "malformed number"},
      {"circuit x\nin a 1\nbs +\ndetect c d\ndetect c d", 5, "duplicate detector"},
      {"circuit x\nin a 1\nbs +\ndetect c c", 4, "duplicate detector port"},
      {"circuit x\nin a 1\nsplit +\ndetect c d", 3, "unknown keyword"},
      {"circuit x\nin a 1\nbs superposed nope\ndetect c d", 3, "unknown superposition case"},
      {"in a 1\nbs +\ndetect c d", 1, "missing 'circuit' header"},
      {"circuit x\ncircuit y\nin a 1\nbs +\ndetect c d", 2, "duplicate 'circuit'"},
      {"in a 1\ncircuit x\nbs +\ndetect c d", 2, "must come before"},
  };
  for (const Case& tc : cases) {
    CAPTURE(tc.src);
    const ParseError err = parse_expect_error(tc.src);
    CHECK(err.line == tc.line);
    CHECK(err.message.find(tc.needle) != std::string::npos);

    // position and snippet invariants
    std::vector<std::string> lines;
    std::string src = tc.src;
    for (std::size_t pos = 0; pos <= src.size();) {
      const std::size_t nl = src.find('\n', pos);
      lines.push_back(src.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    REQUIRE(err.line >= 1);
    REQUIRE(err.line <= static_cast<int>(lines.size()));
    const std::string& line = lines[err.line - 1];
    CHECK(err.column >= 1);
    CHECK(err.column <= static_cast<int>(line.size()) + 1);
    CHECK(line.find(err.snippet) != std::string::npos);
  }
}

TEST_CASE("builtins validate and round-trip") {
  for (const char* name : {"hom", "mzi", "one_input_bs"}) {
    CAPTURE(name);
    CHECK(is_builtin(name));
    const Circuit c = builtin(name);
    CHECK(!validate(c).has_value());
    const Circuit reparsed = parse_ok_or_fail(render(c));
    CHECK(reparsed == c);
  }
  CHECK(!is_builtin("nope"));
  CHECK_THROWS_AS(builtin("nope"), UnknownBuiltinError);
}

TEST_CASE("render/parse round-trip for a mixed circuit") {
  const Circuit c = parse_ok_or_fail(
      "circuit mix\n"
      "in a 0.25\n"
      "in b 0.5*exp(i*0.7)\n"
      "bs superposed same_sym_minus\n"
      "phase c 0.125\n"
      "phase d -pi/3\n"
      "bs +\n"
      "detect f e\n");
  CHECK(c.inputs[1].amp == AmpExpr{0.5, PhaseExpr::literal(0.7)});
  const Circuit again = parse_ok_or_fail(render(c));
  CHECK(again == c);
  CHECK(render(again) == render(c));
}

TEST_CASE("validate rejects structural problems") {
  Circuit c = builtin("hom");

  SUBCASE("detector on undeclared port") {
    c.detectors = {'g', 'd'};
    const auto err = validate(c);
    REQUIRE(err.has_value());
    CHECK(err->message.find('g') != std::string::npos);
  }
  SUBCASE("detector on the wrong layer") {
    c.detectors = {'e', 'f'};
    CHECK(validate(c).has_value());
  }
  SUBCASE("duplicate detector ports in a built circuit") {
    c.detectors = {'c', 'c'};
    const auto err = validate(c);
    REQUIRE(err.has_value());
    CHECK(err->message.find("duplicate detector") != std::string::npos);
  }
  SUBCASE("unbound parameter") {
    c.inputs[1].amp.phase = PhaseExpr::parameter("phi");
    const auto err = validate(c);
    REQUIRE(err.has_value());
    CHECK(err->message.find("unbound parameter") != std::string::npos);
    CHECK(err->message.find("phi") != std::string::npos);
  }
  SUBCASE("no elements") {
    c.elements.clear();
    CHECK(validate(c).has_value());
  }
  SUBCASE("no inputs") {
    c.inputs.clear();
    CHECK(validate(c).has_value());
  }
  SUBCASE("phase on a port outside the current layer") {
    c.elements.insert(c.elements.begin(), PhaseElement{'c', PhaseExpr::literal(0.0)});
    const auto err = validate(c);
    REQUIRE(err.has_value());
    CHECK(err->element_index == 0);
  }
  SUBCASE("too many beam splitter layers") {
    c.elements = {BsElement{}, BsElement{}, BsElement{}};
    CHECK(validate(c).has_value());
  }
  SUBCASE("input beyond the first layer") {
    c.inputs.push_back({'c', {}});
    CHECK(validate(c).has_value());
  }
  SUBCASE("untouched builtin is fine") { CHECK(!validate(c).has_value()); }
}

TEST_CASE("angle token forms") {
  CHECK(parse_angle_token("0") == 0.0);
  CHECK(parse_angle_token("1.25") == 1.25);
  CHECK(parse_angle_token("-2.5e-1") == -0.25);
  CHECK(parse_angle_token("pi") == kPi);
  CHECK(parse_angle_token("pi/2") == kPi / 2);
  CHECK(parse_angle_token("-pi/2") == -kPi / 2);
  CHECK(parse_angle_token("2pi") == 2.0 * kPi);
  CHECK(parse_angle_token("2*pi") == 2.0 * kPi);
  CHECK(parse_angle_token("pi/3") == kPi / 3);
  CHECK(!parse_angle_token("theta").has_value());  // parameters are not literals
  CHECK(!parse_angle_token("pie").has_value());
  CHECK(!parse_angle_token("1x2").has_value());
  CHECK(!parse_angle_token("").has_value());
  CHECK(!parse_angle_token("pi/0").has_value());
}

TEST_SUITE_END();
