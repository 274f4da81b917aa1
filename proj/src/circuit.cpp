#include "lopsim/circuit.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include "lopsim/errors.hpp"
#include "lopsim/text.hpp"

namespace lopsim {

CircuitElement CircuitElement::beam_splitter(int mode_a, int mode_b, double theta,
                                             double aux_phase) {
  CircuitElement el;
  el.kind = ElementKind::BeamSplitter;
  el.mode_a = mode_a;
  el.mode_b = mode_b;
  el.theta = theta;
  el.aux_phase = aux_phase;
  return el;
}

CircuitElement CircuitElement::phase(int mode, double phi) {
  CircuitElement el;
  el.kind = ElementKind::Phase;
  el.mode_a = mode;
  el.phi = phi;
  return el;
}

namespace {

struct Token {
  std::string_view text;
  int line = 0;
  int column = 0;  // 1-based
};

// Splits one source line (comment already stripped) on blanks.
void tokenize_line(std::string_view line, int line_no, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    out.push_back({line.substr(start, i - start), line_no, static_cast<int>(start) + 1});
  }
}

int parse_index(const Token& tok, const char* what) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec == std::errc::result_out_of_range)
    throw ParseError(tok.line, tok.column,
                     std::string(what) + " out of range: '" + std::string(tok.text) + "'");
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(tok.line, tok.column, "expected " + std::string(what) +
                                               ", got '" + std::string(tok.text) + "'");
  if (value < 0)
    throw ParseError(tok.line, tok.column,
                     std::string(what) + " must be nonnegative, got " + std::to_string(value));
  return value;
}

double parse_number(const Token& tok, const char* what) {
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec == std::errc::result_out_of_range)
    throw ParseError(tok.line, tok.column,
                     std::string(what) + " out of range: '" + std::string(tok.text) + "'");
  if (res.ec != std::errc() || res.ptr != last)
    throw ParseError(tok.line, tok.column, "expected " + std::string(what) +
                                               ", got '" + std::string(tok.text) + "'");
  if (!std::isfinite(value))
    throw ParseError(tok.line, tok.column, std::string(what) + " must be finite");
  return value;
}

void expect_arity(const std::vector<Token>& toks, std::size_t lo, std::size_t hi,
                  const char* usage) {
  if (toks.size() < 1 + lo || toks.size() > 1 + hi)
    throw ParseError(toks[0].line, toks[0].column,
                     std::string("expected '") + usage + "'");
}

int checked_mode(const Token& tok, int modes) {
  const int m = parse_index(tok, "mode index");
  if (m >= modes)
    throw ParseError(tok.line, tok.column,
                     "mode index " + std::to_string(m) + " out of range (circuit has " +
                         std::to_string(modes) + (modes == 1 ? " mode)" : " modes)"));
  return m;
}

}  // namespace

CircuitSpec parse_circuit(const std::string& text) {
  CircuitSpec spec;
  bool have_modes = false;
  int line_no = 0;

  std::size_t pos = 0;
  std::vector<Token> toks;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    toks.clear();
    tokenize_line(line, line_no, toks);
    pos = eol + 1;
    if (toks.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    const Token& head = toks[0];
    if (head.text == "modes") {
      if (have_modes)
        throw ParseError(head.line, head.column, "duplicate modes line");
      expect_arity(toks, 1, 1, "modes <M>");
      const int m = parse_index(toks[1], "mode count");
      if (m < 1)
        throw ParseError(toks[1].line, toks[1].column, "mode count must be at least 1");
      if (m > kMaxModes)
        throw ParseError(toks[1].line, toks[1].column,
                         "mode count " + std::to_string(m) + " exceeds limit of " +
                             std::to_string(kMaxModes));
      spec.modes = m;
      have_modes = true;
    } else if (!have_modes) {
      throw ParseError(head.line, head.column,
                       "first line must be 'modes <M>', got '" + std::string(head.text) + "'");
    } else if (head.text == "bs") {
      expect_arity(toks, 3, 4, "bs <i> <j> <theta> [aux_phase]");
      const int i = checked_mode(toks[1], spec.modes);
      const int j = checked_mode(toks[2], spec.modes);
      if (i == j)
        throw ParseError(toks[2].line, toks[2].column,
                         "beam splitter ports must differ, got " + std::to_string(i) +
                             " twice");
      const double theta = parse_number(toks[3], "theta");
      const double aux = toks.size() > 4 ? parse_number(toks[4], "aux_phase") : 0.0;
      spec.elements.push_back(CircuitElement::beam_splitter(i, j, theta, aux));
    } else if (head.text == "ph") {
      expect_arity(toks, 2, 2, "ph <i> <phi>");
      const int i = checked_mode(toks[1], spec.modes);
      const double phi = parse_number(toks[2], "phi");
      spec.elements.push_back(CircuitElement::phase(i, phi));
    } else {
      throw ParseError(head.line, head.column,
                       "unknown element '" + std::string(head.text) + "'");
    }
    if (eol == text.size()) break;
  }

  if (!have_modes) throw ParseError(1, 1, "missing 'modes <M>' header");
  return spec;
}

std::string to_text(const CircuitSpec& spec) {
  std::string out = "modes " + std::to_string(spec.modes) + "\n";
  for (const CircuitElement& el : spec.elements) {
    if (el.kind == ElementKind::BeamSplitter) {
      out += "bs " + std::to_string(el.mode_a) + " " + std::to_string(el.mode_b) +
             " " + format_double(el.theta);
      if (el.aux_phase != 0.0) out += " " + format_double(el.aux_phase);
    } else {
      out += "ph " + std::to_string(el.mode_a) + " " + format_double(el.phi);
    }
    out += "\n";
  }
  return out;
}

TransferMatrix compile(const CircuitSpec& spec) {
  if (spec.modes < 1)
    throw std::invalid_argument("compile: circuit needs at least one mode");
  TransferMatrix u = TransferMatrix::identity(spec.modes);
  for (const CircuitElement& el : spec.elements) {
    const TransferMatrix step =
        el.kind == ElementKind::BeamSplitter
            ? embed(make_beam_splitter(el.theta, el.aux_phase), {el.mode_a, el.mode_b},
                    spec.modes)
            : embed(make_phase(el.phi), {el.mode_a}, spec.modes);
    u = compose(step, u);
  }
  return u;
}

CircuitSpec mach_zehnder(double theta1, double theta2, double k_l1, double k_l2,
                         double phi) {
  CircuitSpec spec;
  spec.modes = 2;
  spec.elements = {
      CircuitElement::beam_splitter(0, 1, theta1),
      CircuitElement::phase(0, k_l1),
      CircuitElement::phase(1, k_l2 + phi),
      CircuitElement::beam_splitter(0, 1, theta2),
  };
  // Surface non-finite angles now rather than at compile time.
  compile(spec);
  return spec;
}

CircuitSpec random_circuit(int modes, int depth, CounterRng& rng) {
  if (modes < 1 || modes > kMaxModes)
    throw std::invalid_argument("random_circuit: modes must be in [1, " +
                                std::to_string(kMaxModes) + "]");
  if (depth < 0) throw std::invalid_argument("random_circuit: depth must be >= 0");
  CircuitSpec spec;
  spec.modes = modes;
  spec.elements.reserve(static_cast<std::size_t>(depth));
  for (int d = 0; d < depth; ++d) {
    const bool splitter = modes > 1 && rng.below(2) == 0;
    if (splitter) {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(modes)));
      int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(modes - 1)));
      if (j >= i) ++j;
      spec.elements.push_back(
          CircuitElement::beam_splitter(i, j, rng.angle(), rng.angle()));
    } else {
      const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(modes)));
      spec.elements.push_back(CircuitElement::phase(i, rng.angle()));
    }
  }
  return spec;
}

}  // namespace lopsim
