#include "lopsim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lopsim/circuit.hpp"

namespace lopsim {
namespace {

void check_detector_pair(int modes, int det_i, int det_j, const char* who) {
  if (det_i < 0 || det_i >= modes || det_j < 0 || det_j >= modes)
    throw std::invalid_argument(std::string(who) + ": detector index out of range");
  if (det_i == det_j)
    throw std::invalid_argument(std::string(who) + ": detectors must differ");
}

}  // namespace

CountRecord merge(const CountRecord& a, const CountRecord& b) {
  if (a.singles.size() != b.singles.size())
    throw std::invalid_argument("merge: detector counts differ");
  if (a.seed != b.seed)
    throw std::invalid_argument("merge: records come from different seeds");
  CountRecord out = a;
  out.frames += b.frames;
  for (std::size_t i = 0; i < out.singles.size(); ++i) {
    out.singles[i] += b.singles[i];
    for (std::size_t j = 0; j < out.singles.size(); ++j)
      out.coincidences[i][j] += b.coincidences[i][j];
  }
  return out;
}

double coincidence_probability(const FockBasisVector& state, int det_i, int det_j) {
  check_detector_pair(state.modes(), det_i, det_j, "coincidence_probability");
  double p = 0.0;
  for (const auto& [occ, prob] : state.probabilities())
    if (occ[static_cast<std::size_t>(det_i)] >= 1 &&
        occ[static_cast<std::size_t>(det_j)] >= 1)
      p += prob;
  return p;
}

AnticorrelationReport anticorrelation_single_photon(const TransferMatrix& u,
                                                    int in_mode, int det_i, int det_j) {
  check_detector_pair(u.modes(), det_i, det_j, "anticorrelation_single_photon");
  const Eigen::VectorXd dist = single_photon_distribution(u, in_mode);
  AnticorrelationReport report;
  report.p_first = dist(det_i);
  report.p_second = dist(det_j);
  if (report.p_first <= 0.0 || report.p_second <= 0.0)
    throw std::invalid_argument(
        "anticorrelation_single_photon: a detector has zero singles probability; "
        "A is undefined");
  // One photon cannot trigger two detectors; the numerator is identically 0.
  report.p_coincidence = 0.0;
  report.value = 0.0;
  return report;
}

AnticorrelationReport anticorrelation_coherent(const TransferMatrix& u,
                                               const CoherentField& alphas, int det_i,
                                               int det_j) {
  check_detector_pair(u.modes(), det_i, det_j, "anticorrelation_coherent");
  const CoherentField beta = propagate_coherent(u, alphas);
  const double lam_i = std::norm(beta(det_i));
  const double lam_j = std::norm(beta(det_j));
  AnticorrelationReport report;
  report.p_first = -std::expm1(-lam_i);
  report.p_second = -std::expm1(-lam_j);
  if (report.p_first <= 0.0 || report.p_second <= 0.0)
    throw std::invalid_argument(
        "anticorrelation_coherent: a detector has zero click probability; "
        "A is undefined");
  // Joint click probability by inclusion-exclusion over the two ports; the
  // ratio below is then computed outright rather than simplified to 1.
  report.p_coincidence =
      1.0 - std::exp(-lam_i) - std::exp(-lam_j) + std::exp(-(lam_i + lam_j));
  report.value = report.p_coincidence / (report.p_first * report.p_second);
  return report;
}

std::vector<HomPoint> hom_scan(const std::vector<double>& transmittance_grid) {
  std::vector<HomPoint> points;
  points.reserve(transmittance_grid.size());
  for (double T : transmittance_grid) {
    if (!(T >= 0.0 && T <= 1.0))
      throw std::invalid_argument("hom_scan: transmittance must lie in [0, 1]");
    const double theta = std::acos(std::sqrt(T));
    const TransferMatrix u = embed(make_beam_splitter(theta), {0, 1}, 2);
    const FockBasisVector state = fock_evolve(u, {1, 1});
    HomPoint point;
    point.transmittance = T;
    point.p11 = std::norm(state.amplitude({1, 1}));
    point.p20 = std::norm(state.amplitude({2, 0}));
    point.p02 = std::norm(state.amplitude({0, 2}));
    points.push_back(point);
  }
  return points;
}

CountRecord sample_frame_range(const TransferMatrix& u, const CoherentField& alphas,
                               std::uint64_t first_frame, std::uint64_t last_frame,
                               std::uint64_t seed) {
  if (last_frame < first_frame)
    throw std::invalid_argument("sample_frame_range: empty or inverted frame range");
  const CoherentField beta = propagate_coherent(u, alphas);
  const Eigen::VectorXd lambda = intensities(beta);
  const int m = u.modes();

  CountRecord rec;
  rec.frames = last_frame - first_frame;
  rec.seed = seed;
  rec.singles.assign(static_cast<std::size_t>(m), 0);
  rec.coincidences.assign(static_cast<std::size_t>(m),
                          std::vector<std::int64_t>(static_cast<std::size_t>(m), 0));

  std::vector<bool> click(static_cast<std::size_t>(m));
  for (std::uint64_t f = first_frame; f < last_frame; ++f) {
    CounterRng rng(seed, f);  // one stream per frame: partition-invariant
    for (int i = 0; i < m; ++i)
      click[static_cast<std::size_t>(i)] = sample_poisson(lambda(i), rng) >= 1;
    for (int i = 0; i < m; ++i) {
      if (!click[static_cast<std::size_t>(i)]) continue;
      ++rec.singles[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < m; ++j) {
        if (!click[static_cast<std::size_t>(j)]) continue;
        ++rec.coincidences[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        ++rec.coincidences[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      }
    }
  }
  return rec;
}

CountRecord sample_frames(const TransferMatrix& u, const CoherentField& alphas,
                          std::uint64_t frames, std::uint64_t seed) {
  if (frames < 1) throw std::invalid_argument("sample_frames: need at least one frame");
  return sample_frame_range(u, alphas, 0, frames, seed);
}

double fringe_visibility(const Fringe& fringe) {
  if (fringe.phase.size() != fringe.value.size())
    throw std::invalid_argument("fringe_visibility: phase/value lengths differ");
  if (fringe.value.size() < 2)
    throw std::invalid_argument("fringe_visibility: need at least two points");
  for (double v : fringe.value)
    if (!std::isfinite(v))
      throw std::invalid_argument("fringe_visibility: values must be finite");
  const auto [lo, hi] = std::minmax_element(fringe.value.begin(), fringe.value.end());
  const double sum = *hi + *lo;
  if (!(sum > 0.0))
    throw std::invalid_argument("fringe_visibility: max + min must be positive");
  return (*hi - *lo) / sum;
}

EquivalenceReport equivalence_check(int trials, int max_modes, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("equivalence_check: trials must be >= 1");
  if (max_modes < 1 || max_modes > kMaxModes)
    throw std::invalid_argument("equivalence_check: max_modes must be in [1, " +
                                std::to_string(kMaxModes) + "]");
  EquivalenceReport report;
  report.trials = trials;
  report.max_modes = max_modes;
  report.seed = seed;
  for (int trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, static_cast<std::uint64_t>(trial));
    const int modes =
        1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_modes)));
    const int depth =
        1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(4 * modes)));
    const TransferMatrix u = compile(random_circuit(modes, depth, rng));
    for (int j = 0; j < modes; ++j) {
      CoherentField field = CoherentField::Zero(modes);
      field(j) = Complex(1.0, 0.0);
      const double deviation = (single_photon_distribution(u, j) -
                                output_fractions(u, field))
                                   .cwiseAbs()
                                   .maxCoeff();
      report.max_deviation = std::max(report.max_deviation, deviation);
    }
  }
  return report;
}

}  // namespace lopsim
