#include <cmath>
#include <limits>
#include <string>

#include <doctest.h>

#include "helpers.hpp"
#include "lopsim/circuit.hpp"
#include "lopsim/errors.hpp"

using lopsim::CircuitElement;
using lopsim::CircuitSpec;
using lopsim::Complex;
using lopsim::ParseError;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("parses a minimal splitter circuit") {
  const CircuitSpec spec = lopsim::parse_circuit("modes 2\nbs 0 1 0.7853981633974483\n");
  CHECK(spec.modes == 2);
  REQUIRE(spec.elements.size() == 1);
  CHECK(spec.elements[0] ==
        CircuitElement::beam_splitter(0, 1, 0.7853981633974483));
}

TEST_CASE("parses comments, blank lines, aux phases, and missing trailing newline") {
  const std::string text =
      "# a comment line\n"
      "modes 3   # trailing comment\n"
      "\n"
      "ph 1 3.141592653589793\n"
      "bs 0 2 0.5 -0.25\n"
      "bs 2 1 1e-3";
  const CircuitSpec spec = lopsim::parse_circuit(text);
  CHECK(spec.modes == 3);
  REQUIRE(spec.elements.size() == 3);
  CHECK(spec.elements[0] == CircuitElement::phase(1, 3.141592653589793));
  CHECK(spec.elements[1] == CircuitElement::beam_splitter(0, 2, 0.5, -0.25));
  CHECK(spec.elements[2] == CircuitElement::beam_splitter(2, 1, 1e-3));
}

TEST_CASE("parse errors carry the offending position") {
  SUBCASE("mode index out of range") {
    try {
      lopsim::parse_circuit("modes 2\nbs 0 5 0.1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 6);
      CHECK(e.message().find("mode index 5 out of range") != std::string::npos);
    }
  }
  SUBCASE("duplicate modes header") {
    try {
      lopsim::parse_circuit("modes 2\nmodes 3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.message().find("duplicate") != std::string::npos);
    }
  }
  SUBCASE("element before the header") {
    CHECK_THROWS_AS(lopsim::parse_circuit("bs 0 1 0.1\nmodes 2\n"), ParseError);
  }
  SUBCASE("missing header entirely") {
    CHECK_THROWS_AS(lopsim::parse_circuit(""), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("# only a comment\n"), ParseError);
  }
  SUBCASE("unknown element") {
    try {
      lopsim::parse_circuit("modes 2\nswap 0 1\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.message().find("unknown element 'swap'") != std::string::npos);
    }
  }
  SUBCASE("malformed numbers") {
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nbs 0 1 fast\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nph 0 1.2.3\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes two\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nph 0 inf\n"), ParseError);
  }
  SUBCASE("wrong arity") {
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nbs 0 1\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nbs 0 1 0.1 0.2 0.3\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nph 0\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes\n"), ParseError);
  }
  SUBCASE("semantic rejections") {
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 0\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 17\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nbs 1 1 0.4\n"), ParseError);
    CHECK_THROWS_AS(lopsim::parse_circuit("modes 2\nph -1 0.4\n"), ParseError);
  }
}

TEST_CASE("ParseError::what embeds the location") {
  try {
    lopsim::parse_circuit("modes 2\nbs 0 5 0.1\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("to_text round-trips through the parser") {
  lopsim::CounterRng rng(7001, 0);
  for (int k = 0; k < 50; ++k) {
    const int modes = 1 + static_cast<int>(rng.below(6));
    const CircuitSpec spec = lopsim::random_circuit(modes, 12, rng);
    CHECK(lopsim::parse_circuit(lopsim::to_text(spec)) == spec);
  }
  // Values that commonly lose digits in careless formatting survive.
  CircuitSpec spec;
  spec.modes = 2;
  spec.elements = {CircuitElement::beam_splitter(0, 1, 0.1, 1e-17),
                   CircuitElement::phase(1, -2.2250738585072014e-308)};
  CHECK(lopsim::parse_circuit(lopsim::to_text(spec)) == spec);
}

TEST_CASE("compile of an empty circuit is the identity") {
  CircuitSpec spec;
  spec.modes = 4;
  const lopsim::TransferMatrix u = lopsim::compile(spec);
  CHECK((u.matrix() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compile applies elements in listed order") {
  // ph then bs differs from bs then ph on the same mode pair.
  CircuitSpec forward;
  forward.modes = 2;
  forward.elements = {CircuitElement::phase(0, 0.8),
                      CircuitElement::beam_splitter(0, 1, 0.6)};
  CircuitSpec reversed;
  reversed.modes = 2;
  reversed.elements = {CircuitElement::beam_splitter(0, 1, 0.6),
                       CircuitElement::phase(0, 0.8)};
  const Eigen::MatrixXcd f = lopsim::compile(forward).matrix();
  const Eigen::MatrixXcd r = lopsim::compile(reversed).matrix();
  CHECK((f - r).cwiseAbs().maxCoeff() > 0.1);

  const Eigen::MatrixXcd expected =
      (lopsim::embed(lopsim::make_beam_splitter(0.6), {0, 1}, 2).matrix() *
       lopsim::embed(lopsim::make_phase(0.8), {0}, 2).matrix());
  CHECK((f - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compile rejects out-of-range elements") {
  CircuitSpec spec;
  spec.modes = 2;
  spec.elements = {CircuitElement::beam_splitter(0, 2, 0.4)};
  CHECK_THROWS_AS(lopsim::compile(spec), std::invalid_argument);
}

TEST_CASE("compiled random circuits are unitary") {
  lopsim::CounterRng rng(7002, 0);
  for (int k = 0; k < 100; ++k) {
    const int modes = 1 + static_cast<int>(rng.below(6));
    const int depth = 1 + static_cast<int>(rng.below(24));
    const lopsim::TransferMatrix u =
        lopsim::compile(lopsim::random_circuit(modes, depth, rng));
    CHECK(lopsim::validate_unitary(u.matrix()).pass);
  }
}

TEST_CASE("mach_zehnder reproduces the hand-multiplied matrix") {
  lopsim::CounterRng rng(7003, 0);
  for (int k = 0; k < 1000; ++k) {
    const double th1 = rng.angle(), th2 = rng.angle();
    const double kl1 = rng.angle(), kl2 = rng.angle(), phi = rng.angle();
    const Eigen::MatrixXcd u =
        lopsim::compile(lopsim::mach_zehnder(th1, th2, kl1, kl2, phi)).matrix();
    const Eigen::Matrix2cd expected =
        lopsim_test::mz_closed_form(th1, th2, kl1, kl2, phi);
    CHECK((u - expected).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("balanced Mach-Zehnder fringe follows (1 -+ cos(delta))/2") {
  lopsim::CounterRng rng(7004, 0);
  for (int k = 0; k < 300; ++k) {
    const double kl1 = rng.angle(), kl2 = rng.angle(), phi = rng.angle();
    const double delta = phi + kl2 - kl1;
    const Eigen::MatrixXcd u =
        lopsim::compile(lopsim::mach_zehnder(kPi / 4, kPi / 4, kl1, kl2, phi)).matrix();
    CHECK(std::abs(std::norm(u(0, 0)) - (1.0 - std::cos(delta)) / 2.0) <= 1e-12);
    CHECK(std::abs(std::norm(u(1, 0)) - (1.0 + std::cos(delta)) / 2.0) <= 1e-12);
  }
}

TEST_CASE("equal arms make output 0 the dark port") {
  const Eigen::MatrixXcd u =
      lopsim::compile(lopsim::mach_zehnder(kPi / 4, kPi / 4, 0.0, 0.0, 0.0)).matrix();
  CHECK(std::norm(u(0, 0)) <= 1e-30);
  CHECK(std::abs(std::norm(u(1, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("with the second splitter removed the fringe disappears") {
  // theta2 = 0: no recombination, so the output split cannot depend on phi.
  const double t1 = 0.7;
  const Eigen::MatrixXcd a =
      lopsim::compile(lopsim::mach_zehnder(t1, 0.0, 0.0, 0.0, 0.3)).matrix();
  const Eigen::MatrixXcd b =
      lopsim::compile(lopsim::mach_zehnder(t1, 0.0, 0.0, 0.0, 2.9)).matrix();
  CHECK(std::abs(std::norm(a(0, 0)) - std::norm(b(0, 0))) <= 1e-15);
  CHECK(std::abs(std::norm(a(0, 0)) - std::cos(t1) * std::cos(t1)) <= 1e-15);
}

TEST_CASE("mach_zehnder rejects non-finite angles") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(lopsim::mach_zehnder(inf, 0.0, 0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lopsim::mach_zehnder(0.0, 0.0, 0.0, inf, 0.0), std::invalid_argument);
}

TEST_CASE("random_circuit respects its bounds") {
  lopsim::CounterRng rng(7005, 0);
  const CircuitSpec spec = lopsim::random_circuit(1, 10, rng);
  CHECK(spec.modes == 1);
  CHECK(spec.elements.size() == 10);
  for (const CircuitElement& el : spec.elements)
    CHECK(el.kind == lopsim::ElementKind::Phase);  // no partner mode available

  const CircuitSpec multi = lopsim::random_circuit(4, 50, rng);
  for (const CircuitElement& el : multi.elements) {
    CHECK(el.mode_a >= 0);
    CHECK(el.mode_a < 4);
    if (el.kind == lopsim::ElementKind::BeamSplitter) {
      CHECK(el.mode_b >= 0);
      CHECK(el.mode_b < 4);
      CHECK(el.mode_a != el.mode_b);
    }
  }
  CHECK_THROWS_AS(lopsim::random_circuit(0, 5, rng), std::invalid_argument);
  CHECK_THROWS_AS(lopsim::random_circuit(2, -1, rng), std::invalid_argument);
}
