#pragma once

#include <string>
#include <vector>

#include "lopsim/rng.hpp"
#include "lopsim/transfer.hpp"

namespace lopsim {

enum class ElementKind { BeamSplitter, Phase };

struct CircuitElement {
  ElementKind kind = ElementKind::Phase;
  int mode_a = 0;
  int mode_b = 0;        // second port; beam splitters only
  double theta = 0.0;    // mixing angle; beam splitters only
  double aux_phase = 0.0;  // common phase on t and r; beam splitters only
  double phi = 0.0;      // phase elements only

  static CircuitElement beam_splitter(int mode_a, int mode_b, double theta,
                                      double aux_phase = 0.0);
  static CircuitElement phase(int mode, double phi);

  friend bool operator==(const CircuitElement&, const CircuitElement&) = default;
};

struct CircuitSpec {
  int modes = 1;
  std::vector<CircuitElement> elements;

  friend bool operator==(const CircuitSpec&, const CircuitSpec&) = default;
};

// Parses the line-oriented circuit format:
//
//   # comment
//   modes <M>
//   bs <i> <j> <theta> [aux_phase]
//   ph <i> <phi>
//
// '#' starts a comment anywhere on a line; blank lines are skipped; the first
// significant line must be the (single) modes header; indices are 0-based.
// Rejects with ParseError carrying the 1-based line/column of the offending
// token, both for syntax (bad number, wrong arity, unknown element) and
// semantics (mode index out of range, repeated beam-splitter port, duplicate
// header, non-finite parameter).
CircuitSpec parse_circuit(const std::string& text);

// Canonical text form; parse_circuit(to_text(spec)) == spec.
std::string to_text(const CircuitSpec& spec);

// Folds every element, in listed order, into one transfer matrix. An empty
// element list compiles to the identity. Mode-range errors propagate from
// embed(); the result is unitarity-checked by construction.
TransferMatrix compile(const CircuitSpec& spec);

// Two-mode Mach-Zehnder interferometer: splitter theta1 on modes (0, 1), free
// propagation phases k_l1 on mode 0 and k_l2 plus an adjustable phi on mode 1,
// then splitter theta2. With balanced splitters the output-0 probability for
// light entering port 0 is (1 - cos(phi + k_l2 - k_l1)) / 2.
CircuitSpec mach_zehnder(double theta1, double theta2, double k_l1, double k_l2,
                         double phi);

// Uniformly random circuit of the given depth: each element is a beam splitter
// on a random distinct mode pair (or a phase element when modes == 1, and with
// probability 1/2 otherwise), with angles drawn from [0, 2*pi).
CircuitSpec random_circuit(int modes, int depth, CounterRng& rng);

}  // namespace lopsim
