#include "homsim/circuit.hpp"

#include <cctype>
#include <sstream>

namespace homsim {

namespace {

struct Tok {
  enum class Kind { Ident, Number, Sym };
  Kind kind = Kind::Sym;
  std::string text;
  int column = 0;  // 1-based
  double num = 0.0;
};

// internal unwinding; converted to the public ParseError in parse()
struct ParseFail {
  ParseError err;
};

[[noreturn]] void fail(int line, int column, std::string message, std::string snippet) {
  throw ParseFail{ParseError{line, column, std::move(message), std::move(snippet)}};
}

std::vector<Tok> lex_line(const std::string& line, int line_no) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char ch = line[i];
    if (ch == '#') break;
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
        ++j;
      out.push_back({Tok::Kind::Ident, line.substr(i, j - i), col, 0.0});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) ||
        (ch == '.' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
          ++k;
          while (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
          j = k;
        }
      }
      const std::string text = line.substr(i, j - i);
      double value = 0.0;
      try {
        value = std::stod(text);
      } catch (const std::exception&) {
        fail(line_no, col, "malformed number '" + text + "'", line);
      }
      out.push_back({Tok::Kind::Number, text, col, value});
      i = j;
      continue;
    }
    // any other printable character becomes a one-char symbol; the grammar
    // layer rejects the ones it does not expect with a contextual message
    out.push_back({Tok::Kind::Sym, std::string(1, ch), col, 0.0});
    ++i;
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Tok> toks, std::string line_text, int line_no)
      : toks_(std::move(toks)), line_(std::move(line_text)), line_no_(line_no) {}

  bool at_end() const { return pos_ >= toks_.size(); }

  const Tok& peek() const {
    if (at_end()) fail_here("unexpected end of line");
    return toks_[pos_];
  }

  const Tok& take() {
    const Tok& t = peek();
    ++pos_;
    return t;
  }

  bool next_is_sym(char ch) const {
    return !at_end() && toks_[pos_].kind == Tok::Kind::Sym && toks_[pos_].text[0] == ch;
  }

  bool next_is_ident(std::string_view name) const {
    return !at_end() && toks_[pos_].kind == Tok::Kind::Ident && toks_[pos_].text == name;
  }

  void expect_sym(char ch, const char* what) {
    if (!next_is_sym(ch)) fail_here(std::string("expected '") + ch + "' " + what);
    ++pos_;
  }

  void expect_end() {
    if (!at_end())
      fail(line_no_, peek().column, "unexpected token '" + peek().text + "'", line_);
  }

  char expect_port() {
    const Tok& t = take();
    if (t.kind != Tok::Kind::Ident || t.text.size() != 1 ||
        !std::islower(static_cast<unsigned char>(t.text[0])))
      fail(line_no_, t.column, "expected a port letter, got '" + t.text + "'", line_);
    const char p = t.text[0];
    if (p < 'a' || p > 'f')
      fail(line_no_, t.column, std::string("undeclared port '") + p + "'", line_);
    return p;
  }

  // ANGLE = [-] ( NUM | [NUM [*]] pi [/ NUM] ) | parameter-name
  PhaseExpr parse_angle() {
    bool negate = false;
    if (next_is_sym('-') || next_is_sym('+')) {
      negate = take().text[0] == '-';
    }
    const Tok& t = take();
    if (t.kind == Tok::Kind::Ident) {
      if (t.text == "pi") return PhaseExpr::literal(apply_sign(pi_tail(kPi), negate));
      if (negate) fail(line_no_, t.column, "cannot negate parameter '" + t.text + "'", line_);
      return PhaseExpr::parameter(t.text);
    }
    if (t.kind == Tok::Kind::Number) {
      double value = t.num;
      const bool pi_follows =
          next_is_ident("pi") || (next_is_sym('*') && pos_ + 1 < toks_.size() &&
                                  toks_[pos_ + 1].kind == Tok::Kind::Ident &&
                                  toks_[pos_ + 1].text == "pi");
      if (pi_follows) {
        if (next_is_sym('*')) ++pos_;
        ++pos_;  // pi
        return PhaseExpr::literal(apply_sign(pi_tail(value * kPi), negate));
      }
      if (!at_end() && peek().kind == Tok::Kind::Ident && adjacent(t, peek()))
        fail(line_no_, t.column, "malformed number '" + t.text + peek().text + "'", line_);
      return PhaseExpr::literal(apply_sign(value, negate));
    }
    fail(line_no_, t.column, "expected an angle, got '" + t.text + "'", line_);
  }

  // AMP = NUM | [NUM *] exp ( i * ANGLE )
  AmpExpr parse_amp() {
    double coefficient = 1.0;
    bool have_coefficient = false;
    if (next_is_sym('-') || next_is_sym('+')) {
      const bool neg = take().text[0] == '-';
      const Tok& t = take();
      if (t.kind != Tok::Kind::Number)
        fail(line_no_, t.column, "expected a number after sign", line_);
      coefficient = neg ? -t.num : t.num;
      have_coefficient = true;
      check_number_tail(t);
    } else if (!at_end() && peek().kind == Tok::Kind::Number) {
      const Tok& t = take();
      coefficient = t.num;
      have_coefficient = true;
      check_number_tail(t);
    }
    if (have_coefficient) {
      if (at_end()) return {coefficient, PhaseExpr::literal(0.0)};
      expect_sym('*', "between coefficient and exp()");
    }
    const Tok& t = take();
    if (t.kind != Tok::Kind::Ident || t.text != "exp")
      fail(line_no_, t.column, "expected amplitude 'exp(i*...)', got '" + t.text + "'", line_);
    expect_sym('(', "after exp");
    const Tok& imag = take();
    if (imag.kind != Tok::Kind::Ident || imag.text != "i")
      fail(line_no_, imag.column, "expected 'i' inside exp()", line_);
    expect_sym('*', "after 'i'");
    PhaseExpr phase = parse_angle();
    expect_sym(')', "to close exp()");
    return {coefficient, std::move(phase)};
  }

  [[noreturn]] void fail_here(std::string message) const {
    const int col = toks_.empty() ? 1 : toks_.back().column + static_cast<int>(toks_.back().text.size());
    fail(line_no_, col, std::move(message), line_);
  }

 private:
  static bool adjacent(const Tok& a, const Tok& b) {
    return b.column == a.column + static_cast<int>(a.text.size());
  }

  static double apply_sign(double v, bool negate) { return negate ? -v : v; }

  // optional "/ NUM" after a pi form
  double pi_tail(double value) {
    if (next_is_sym('/')) {
      ++pos_;
      const Tok& d = take();
      if (d.kind != Tok::Kind::Number || d.num == 0.0)
        fail(line_no_, d.column, "expected a nonzero divisor after '/'", line_);
      return value / d.num;
    }
    return value;
  }

  void check_number_tail(const Tok& t) {
    if (!at_end() && peek().kind == Tok::Kind::Ident && adjacent(t, peek()) &&
        peek().text != "pi")
      fail(line_no_, t.column, "malformed number '" + t.text + peek().text + "'", line_);
  }

  std::vector<Tok> toks_;
  std::string line_;
  int line_no_ = 1;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_lines(std::string_view source) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= source.size()) {
    const std::size_t nl = source.find('\n', start);
    if (nl == std::string_view::npos) {
      out.emplace_back(source.substr(start));
      break;
    }
    out.emplace_back(source.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

}  // namespace

ParseResult parse(std::string_view source) {
  Circuit c;
  bool have_header = false;
  bool have_detect = false;
  bool have_statement = false;
  const std::vector<std::string> lines = split_lines(source);

  try {
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const std::string& line = lines[li];
      const int line_no = static_cast<int>(li) + 1;
      std::vector<Tok> toks = lex_line(line, line_no);
      if (toks.empty()) continue;

      const Tok head = toks[0];
      if (head.kind != Tok::Kind::Ident)
        fail(line_no, head.column, "unknown keyword '" + head.text + "'", line);

      LineParser p(std::vector<Tok>(toks.begin() + 1, toks.end()), line, line_no);
      if (head.text == "circuit") {
        if (have_header)
          fail(line_no, head.column, "duplicate 'circuit' header", line);
        if (have_statement)
          fail(line_no, head.column, "'circuit' header must come before any statement", line);
        const Tok& name = p.take();
        if (name.kind != Tok::Kind::Ident)
          fail(line_no, name.column, "expected a circuit name", line);
        c.name = name.text;
        p.expect_end();
        have_header = true;
        continue;
      }

      have_statement = true;
      if (head.text == "in") {
        const char port = p.expect_port();
        AmpExpr amp = p.parse_amp();
        p.expect_end();
        c.inputs.push_back({port, std::move(amp)});
      } else if (head.text == "bs") {
        if (p.next_is_ident("superposed")) {
          p.take();
          const Tok& tok = p.take();
          BasisCase bc;
          try {
            bc = case_from_token(tok.text);
          } catch (const std::invalid_argument&) {
            fail(line_no, tok.column, "unknown superposition case '" + tok.text + "'", line);
          }
          p.expect_end();
          c.elements.emplace_back(BsElement{true, BasisSign::Plus, bc});
        } else {
          const Tok& tok = p.take();
          if (tok.kind != Tok::Kind::Sym || (tok.text != "+" && tok.text != "-"))
            fail(line_no, tok.column, "unknown sign '" + tok.text + "'", line);
          p.expect_end();
          c.elements.emplace_back(
              BsElement{false, tok.text == "+" ? BasisSign::Plus : BasisSign::Minus, {}});
        }
      } else if (head.text == "phase") {
        const char port = p.expect_port();
        PhaseExpr phi = p.parse_angle();
        p.expect_end();
        c.elements.emplace_back(PhaseElement{port, std::move(phi)});
      } else if (head.text == "detect") {
        if (have_detect) fail(line_no, head.column, "duplicate detector declaration", line);
        const char first = p.expect_port();
        const int second_col = p.at_end() ? head.column : p.peek().column;
        const char second = p.expect_port();
        if (first == second)
          fail(line_no, second_col, std::string("duplicate detector port '") + second + "'", line);
        p.expect_end();
        c.detectors = {first, second};
        have_detect = true;
      } else {
        fail(line_no, head.column, "unknown keyword '" + head.text + "'", line);
      }
    }

    if (!have_header) {
      const std::string snippet = lines.empty() ? std::string() : lines.front();
      return ParseError{1, 1, "missing 'circuit' header", snippet};
    }
  } catch (const ParseFail& f) {
    return f.err;
  }
  return c;
}

bool is_builtin(std::string_view name) {
  return name == "hom" || name == "mzi" || name == "one_input_bs";
}

Circuit builtin(std::string_view name) {
  Circuit c;
  if (name == "hom") {
    c.name = "hom";
    c.inputs = {{'a', {1.0, PhaseExpr::literal(0.0)}}, {'b', {1.0, PhaseExpr::parameter("theta")}}};
    c.elements = {BsElement{false, BasisSign::Plus, {}}};
    c.detectors = {'c', 'd'};
  } else if (name == "mzi") {
    c.name = "mzi";
    c.inputs = {{'a', {1.0, PhaseExpr::literal(0.0)}}};
    c.elements = {BsElement{false, BasisSign::Plus, {}},
                  PhaseElement{'d', PhaseExpr::parameter("zeta")},
                  BsElement{false, BasisSign::Plus, {}}};
    c.detectors = {'e', 'f'};
  } else if (name == "one_input_bs") {
    c.name = "one_input_bs";
    c.inputs = {{'a', {1.0, PhaseExpr::literal(0.0)}}};
    c.elements = {BsElement{false, BasisSign::Plus, {}}};
    c.detectors = {'c', 'd'};
  } else {
    throw UnknownBuiltinError("unknown builtin circuit '" + std::string(name) + "'");
  }
  return c;
}

namespace {

std::string render_phase(const PhaseExpr& e) {
  return e.kind == PhaseExpr::Kind::Parameter ? e.name : format_g17(e.value);
}

std::string render_amp(const AmpExpr& a) {
  const bool zero_phase =
      a.phase.kind == PhaseExpr::Kind::Literal && a.phase.value == 0.0;
  if (zero_phase) return format_g17(a.coefficient);
  const std::string exp_part = "exp(i*" + render_phase(a.phase) + ")";
  if (a.coefficient == 1.0) return exp_part;
  return format_g17(a.coefficient) + "*" + exp_part;
}

}  // namespace

std::string render(const Circuit& c) {
  std::ostringstream os;
  os << "circuit " << c.name << "\n";
  for (const InputSpec& in : c.inputs) os << "in " << in.port << ' ' << render_amp(in.amp) << "\n";
  for (const Element& el : c.elements) {
    if (const auto* bs = std::get_if<BsElement>(&el)) {
      if (bs->superposed)
        os << "bs superposed " << case_token(bs->basis_case) << "\n";
      else
        os << "bs " << to_string(bs->sign) << "\n";
    } else {
      const auto& ph = std::get<PhaseElement>(el);
      os << "phase " << ph.port << ' ' << render_phase(ph.phi) << "\n";
    }
  }
  os << "detect " << c.detectors[0] << ' ' << c.detectors[1] << "\n";
  return os.str();
}

std::optional<ValidationError> validate(const Circuit& c) {
  const auto err = [](std::string m, int idx = -1) {
    return ValidationError{std::move(m), idx};
  };
  if (c.name.empty()) return err("circuit has no name");
  if (c.inputs.empty()) return err("no inputs declared");
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    const char p = c.inputs[i].port;
    if (p != 'a' && p != 'b')
      return err(std::string("input on port '") + p + "'; inputs enter on ports a/b");
    for (std::size_t j = 0; j < i; ++j)
      if (c.inputs[j].port == p) return err(std::string("duplicate input on port '") + p + "'");
  }
  if (c.elements.empty()) return err("circuit needs at least one element");

  int layer = 0;
  for (std::size_t i = 0; i < c.elements.size(); ++i) {
    if (std::holds_alternative<BsElement>(c.elements[i])) {
      ++layer;
      if (layer > 2)
        return err("too many beam-splitter layers; port labels end at e/f", static_cast<int>(i));
    } else {
      const char p = std::get<PhaseElement>(c.elements[i]).port;
      const char lo = static_cast<char>('a' + 2 * layer);
      if (p != lo && p != lo + 1)
        return err(std::string("phase on port '") + p + "' but the current layer exposes '" + lo +
                       "'/'" + static_cast<char>(lo + 1) + "'",
                   static_cast<int>(i));
    }
  }

  const char lo = static_cast<char>('a' + 2 * layer);
  if (c.detectors[0] == 0 && c.detectors[1] == 0) return err("no detectors declared");
  for (const char d : c.detectors) {
    if (d < 'a' || d > 'f') return err(std::string("detector on undeclared port '") + d + "'");
    if (d != lo && d != lo + 1)
      return err(std::string("detector on port '") + d + "' but the final layer exposes '" + lo +
                 "'/'" + static_cast<char>(lo + 1) + "'");
  }
  if (c.detectors[0] == c.detectors[1])
    return err(std::string("duplicate detector port '") + c.detectors[0] + "'");

  const auto check_param = [&](const PhaseExpr& e, int idx) -> std::optional<ValidationError> {
    if (e.kind == PhaseExpr::Kind::Parameter && e.name != "theta" && e.name != "zeta")
      return err("unbound parameter '" + e.name + "'", idx);
    return std::nullopt;
  };
  for (const InputSpec& in : c.inputs)
    if (auto e = check_param(in.amp.phase, -1)) return e;
  for (std::size_t i = 0; i < c.elements.size(); ++i)
    if (const auto* ph = std::get_if<PhaseElement>(&c.elements[i]))
      if (auto e = check_param(ph->phi, static_cast<int>(i))) return e;

  return std::nullopt;
}

std::optional<double> parse_angle_token(std::string_view text) {
  try {
    std::vector<Tok> toks = lex_line(std::string(text), 1);
    if (toks.empty()) return std::nullopt;
    LineParser p(std::move(toks), std::string(text), 1);
    const PhaseExpr e = p.parse_angle();
    p.expect_end();
    if (e.kind != PhaseExpr::Kind::Literal) return std::nullopt;
    return e.value;
  } catch (const ParseFail&) {
    return std::nullopt;
  }
}

}  // namespace homsim
