#pragma once

#include <cstdint>
#include <vector>

#include "lopsim/classical.hpp"
#include "lopsim/quantum.hpp"
#include "lopsim/rng.hpp"
#include "lopsim/transfer.hpp"

namespace lopsim {

// Click tallies from a block of Monte Carlo frames. Tallies from disjoint
// frame ranges of the same run (same seed) merge additively, in any order,
// into the tallies of the combined range.
struct CountRecord {
  std::uint64_t frames = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> singles;                    // clicks per detector
  std::vector<std::vector<std::int64_t>> coincidences;  // symmetric, zero diagonal

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

CountRecord merge(const CountRecord& a, const CountRecord& b);

struct Fringe {
  std::vector<double> phase;
  std::vector<double> value;
};

struct AnticorrelationReport {
  double p_first = 0.0;        // click probability, first detector
  double p_second = 0.0;       // click probability, second detector
  double p_coincidence = 0.0;  // joint click probability
  double value = 0.0;          // A = p_coincidence / (p_first * p_second)
};

struct HomPoint {
  double transmittance = 0.0;  // |t|^2
  double p11 = 0.0;
  double p20 = 0.0;
  double p02 = 0.0;
};

struct EquivalenceReport {
  int trials = 0;
  int max_modes = 0;
  std::uint64_t seed = 0;
  double max_deviation = 0.0;
};

// Probability that detectors det_i and det_j (distinct) both see at least one
// photon: the summed probability of occupations with occ[det_i] >= 1 and
// occ[det_j] >= 1. The state must be normalized.
double coincidence_probability(const FockBasisVector& state, int det_i, int det_j);

// A = P_12 / (P_1 P_2) for one photon into in_mode: the coincidence is exactly
// zero (a single photon cannot split), so A = 0. Undefined — and an error —
// when either detector has zero singles probability.
AnticorrelationReport anticorrelation_single_photon(const TransferMatrix& u,
                                                    int in_mode, int det_i = 0,
                                                    int det_j = 1);

// A for coherent input, with Poisson click statistics on the output modes:
// p_i = 1 - e^{-lambda_i} per detector and the joint probability by
// inclusion-exclusion over the two independent ports. The ratio is computed,
// not asserted; independence makes it 1 up to round-off.
AnticorrelationReport anticorrelation_coherent(const TransferMatrix& u,
                                               const CoherentField& alphas,
                                               int det_i = 0, int det_j = 1);

// Two photons, one per input port, through a splitter of transmittance T at
// each grid point: P(1,1) = (2T - 1)^2 collapses to zero at T = 1/2 while
// P(2,0) = P(0,2) = 2T(1 - T) absorbs the pairs. Grid values must lie in [0, 1].
std::vector<HomPoint> hom_scan(const std::vector<double>& transmittance_grid);

// Threshold detectors behind u fed with coherent amplitudes: each frame draws
// independent Poisson photon counts with mean |beta_i|^2 per output mode and
// registers clicks (count >= 1). Frame f uses RNG stream f, so partitioning
// frames across calls is exact: see sample_frame_range / merge.
CountRecord sample_frames(const TransferMatrix& u, const CoherentField& alphas,
                          std::uint64_t frames, std::uint64_t seed);

// Frames [first_frame, last_frame) of the run identified by seed.
CountRecord sample_frame_range(const TransferMatrix& u, const CoherentField& alphas,
                               std::uint64_t first_frame, std::uint64_t last_frame,
                               std::uint64_t seed);

// (max - min) / (max + min) over the fringe values. Needs >= 2 points, equal
// array lengths, finite values, and max + min > 0.
double fringe_visibility(const Fringe& fringe);

// Draws `trials` random circuits (1..max_modes modes, depth up to 4x the mode
// count) and compares single-photon detection probabilities against normalized
// classical output fractions for every input mode, reporting the worst
// absolute deviation seen.
EquivalenceReport equivalence_check(int trials, int max_modes, std::uint64_t seed);

}  // namespace lopsim
