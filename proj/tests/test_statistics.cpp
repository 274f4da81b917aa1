#include <cmath>

#include <doctest.h>

#include "helpers.hpp"
#include "lopsim/circuit.hpp"
#include "lopsim/statistics.hpp"

using lopsim::CoherentField;
using lopsim::Complex;
using lopsim::CountRecord;
using lopsim::FockBasisVector;
using lopsim::TransferMatrix;

namespace {
constexpr double kPi = 3.14159265358979323846;

CoherentField field2(Complex a, Complex b) {
  CoherentField f(2);
  f << a, b;
  return f;
}
}  // namespace

TEST_CASE("coincidence probability sums occupations that light both detectors") {
  const TransferMatrix u = lopsim::embed(lopsim::make_beam_splitter(0.6435011087932844),
                                         {0, 1}, 2);  // |t|^2 = 0.64
  SUBCASE("single photons never produce coincidences") {
    const FockBasisVector state = lopsim::fock_evolve(u, {1, 0});
    CHECK(lopsim::coincidence_probability(state, 0, 1) == 0.0);
  }
  SUBCASE("photon pairs do, matching (2T - 1)^2") {
    const FockBasisVector state = lopsim::fock_evolve(u, {1, 1});
    const double expected = (2.0 * 0.64 - 1.0) * (2.0 * 0.64 - 1.0);
    CHECK(std::abs(lopsim::coincidence_probability(state, 0, 1) - expected) <= 1e-12);
  }
  SUBCASE("argument checking") {
    const FockBasisVector state = lopsim::fock_evolve(u, {1, 1});
    CHECK_THROWS_AS(lopsim::coincidence_probability(state, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(lopsim::coincidence_probability(state, 0, 2), std::invalid_argument);
  }
}

TEST_CASE("a heralded single photon anticorrelates perfectly") {
  const TransferMatrix u = lopsim::embed(lopsim::make_beam_splitter(kPi / 4), {0, 1}, 2);
  const auto report = lopsim::anticorrelation_single_photon(u, 0);
  CHECK(std::abs(report.p_first - 0.5) <= 1e-12);
  CHECK(std::abs(report.p_second - 0.5) <= 1e-12);
  CHECK(report.p_coincidence == 0.0);
  CHECK(report.value == 0.0);
}

TEST_CASE("single-photon anticorrelation is undefined on a dark detector") {
  const TransferMatrix eye = TransferMatrix::identity(2);
  CHECK_THROWS_AS(lopsim::anticorrelation_single_photon(eye, 0), std::invalid_argument);
}

TEST_CASE("coherent light shows no anticorrelation") {
  const TransferMatrix u = lopsim::embed(lopsim::make_beam_splitter(kPi / 4), {0, 1}, 2);
  const auto report =
      lopsim::anticorrelation_coherent(u, field2(Complex(1.0, 0.0), Complex(0.0, 0.0)));
  CHECK(std::abs(report.value - 1.0) <= 1e-12);
  CHECK(report.p_first > 0.0);
  CHECK(report.p_coincidence > 0.0);
}

TEST_CASE("coherent anticorrelation stays at the classical boundary on random circuits") {
  lopsim::CounterRng rng(11001, 0);
  for (int k = 0; k < 200; ++k) {
    const int modes = 2 + static_cast<int>(rng.below(5));
    const TransferMatrix u = lopsim_test::random_unitary(modes, 4 * modes, rng);
    CoherentField alphas(modes);
    for (int i = 0; i < modes; ++i)
      alphas(i) = std::polar(0.4 + 0.8 * rng.uniform(), rng.angle());
    const auto report = lopsim::anticorrelation_coherent(u, alphas);
    CHECK(report.value >= 1.0 - 1e-9);
    CHECK(report.value <= 1.0 + 1e-9);
  }
}

TEST_CASE("coherent anticorrelation is undefined when a port is dark") {
  const TransferMatrix eye = TransferMatrix::identity(2);
  CHECK_THROWS_AS(
      lopsim::anticorrelation_coherent(eye, field2(Complex(1.0, 0.0), Complex(0.0, 0.0))),
      std::invalid_argument);
}

TEST_CASE("hom_scan hits the textbook landmarks") {
  const auto points = lopsim::hom_scan({0.0, 0.5, 0.75, 1.0});
  REQUIRE(points.size() == 4);
  CHECK(std::abs(points[0].p11 - 1.0) <= 1e-12);  // full reflection: both swap
  CHECK(points[1].p11 <= 1e-12);                  // balanced: perfect suppression
  CHECK(std::abs(points[1].p20 - 0.5) <= 1e-12);
  CHECK(std::abs(points[1].p02 - 0.5) <= 1e-12);
  CHECK(std::abs(points[2].p11 - 0.25) <= 1e-12);
  CHECK(std::abs(points[2].p20 - 0.375) <= 1e-12);
  CHECK(std::abs(points[2].p02 - 0.375) <= 1e-12);
  CHECK(std::abs(points[3].p11 - 1.0) <= 1e-12);  // full transmission
  CHECK_THROWS_AS(lopsim::hom_scan({1.1}), std::invalid_argument);
  CHECK_THROWS_AS(lopsim::hom_scan({-0.1}), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and partition invariant") {
  const TransferMatrix u = lopsim::embed(lopsim::make_beam_splitter(kPi / 4), {0, 1}, 2);
  const CoherentField in = field2(Complex(1.0, 0.0), Complex(0.2, -0.3));
  const CountRecord once = lopsim::sample_frames(u, in, 1000, 31);
  const CountRecord again = lopsim::sample_frames(u, in, 1000, 31);
  CHECK(once == again);

  const CountRecord head = lopsim::sample_frame_range(u, in, 0, 400, 31);
  const CountRecord tail = lopsim::sample_frame_range(u, in, 400, 1000, 31);
  CHECK(lopsim::merge(head, tail) == once);
  CHECK(lopsim::merge(tail, head) == once);

  const CountRecord other_seed = lopsim::sample_frames(u, in, 1000, 32);
  CHECK_FALSE(once == other_seed);
}

TEST_CASE("merge rejects mismatched records") {
  const TransferMatrix u = TransferMatrix::identity(2);
  const CoherentField in = field2(Complex(1.0, 0.0), Complex(1.0, 0.0));
  const CountRecord a = lopsim::sample_frames(u, in, 10, 1);
  const CountRecord b = lopsim::sample_frames(u, in, 10, 2);
  CHECK_THROWS_AS(lopsim::merge(a, b), std::invalid_argument);
  const CountRecord c = lopsim::sample_frames(TransferMatrix::identity(3),
                                              CoherentField::Zero(3), 10, 1);
  CHECK_THROWS_AS(lopsim::merge(a, c), std::invalid_argument);
}

TEST_CASE("sampled singles follow the Poisson click probability") {
  const TransferMatrix u = lopsim::embed(lopsim::make_beam_splitter(kPi / 4), {0, 1}, 2);
  for (const double mean_photons : {0.01, 1.0}) {
    const CoherentField in = field2(Complex(std::sqrt(mean_photons), 0.0), Complex(0.0, 0.0));
    const std::uint64_t frames = 100000;
    const CountRecord rec = lopsim::sample_frames(u, in, frames, 2024);
    const double p = -std::expm1(-mean_photons / 2.0);  // each output sees half
    for (int d = 0; d < 2; ++d) {
      const double rate =
          static_cast<double>(rec.singles[static_cast<std::size_t>(d)]) / frames;
      const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(frames));
      CHECK(std::abs(rate - p) <= 5.0 * sigma);
    }
    // coincidences cannot exceed either singles count
    CHECK(rec.coincidences[0][1] <= rec.singles[0]);
    CHECK(rec.coincidences[0][1] <= rec.singles[1]);
    CHECK(rec.coincidences[0][1] == rec.coincidences[1][0]);
  }
}

TEST_CASE("the dark port of an equal-arm interferometer never clicks") {
  const TransferMatrix u =
      lopsim::compile(lopsim::mach_zehnder(kPi / 4, kPi / 4, 0.0, 0.0, 0.0));
  const CountRecord rec =
      lopsim::sample_frames(u, field2(Complex(1.0, 0.0), Complex(0.0, 0.0)), 50000, 7);
  CHECK(rec.singles[0] == 0);
  CHECK(rec.singles[1] > 0);
  CHECK(rec.coincidences[0][1] == 0);
}

TEST_CASE("vacuum input never clicks anywhere") {
  const TransferMatrix u = TransferMatrix::identity(2);
  const CountRecord rec = lopsim::sample_frames(u, CoherentField::Zero(2), 1000, 5);
  CHECK(rec.singles[0] == 0);
  CHECK(rec.singles[1] == 0);
  CHECK_THROWS_AS(lopsim::sample_frames(u, CoherentField::Zero(2), 0, 5),
                  std::invalid_argument);
}

TEST_CASE("fringe visibility") {
  SUBCASE("ideal interferometer fringe has unit visibility") {
    lopsim::Fringe fringe;
    for (int k = 0; k < 64; ++k) {
      const double delta = 2.0 * kPi * k / 64.0;
      const TransferMatrix u =
          lopsim::compile(lopsim::mach_zehnder(kPi / 4, kPi / 4, 0.0, 0.0, delta));
      fringe.phase.push_back(delta);
      fringe.value.push_back(std::norm(u.matrix()(0, 0)));
    }
    CHECK(std::abs(lopsim::fringe_visibility(fringe) - 1.0) <= 1e-15);
  }
  SUBCASE("constant fringe has zero visibility") {
    lopsim::Fringe flat;
    flat.phase = {0.0, 1.0, 2.0};
    flat.value = {0.25, 0.25, 0.25};
    CHECK(lopsim::fringe_visibility(flat) == 0.0);
  }
  SUBCASE("rejects degenerate input") {
    lopsim::Fringe bad;
    bad.phase = {0.0};
    bad.value = {0.5};
    CHECK_THROWS_AS(lopsim::fringe_visibility(bad), std::invalid_argument);
    lopsim::Fringe mismatch;
    mismatch.phase = {0.0, 1.0};
    mismatch.value = {0.5};
    CHECK_THROWS_AS(lopsim::fringe_visibility(mismatch), std::invalid_argument);
    lopsim::Fringe zeros;
    zeros.phase = {0.0, 1.0};
    zeros.value = {0.0, 0.0};
    CHECK_THROWS_AS(lopsim::fringe_visibility(zeros), std::invalid_argument);
  }
}

TEST_CASE("monte-carlo fringe from the sampler reaches full visibility") {
  // With an exact dark port the minimum is exactly zero, so the estimator sits
  // at 1 regardless of shot noise in the bright-port counts.
  const std::uint64_t frames = 10000;
  lopsim::Fringe fringe;
  for (int k = 0; k < 16; ++k) {
    const double delta = 2.0 * kPi * k / 16.0;
    const TransferMatrix u =
        lopsim::compile(lopsim::mach_zehnder(kPi / 4, kPi / 4, 0.0, 0.0, delta));
    const CountRecord rec = lopsim::sample_frame_range(
        u, field2(Complex(std::sqrt(0.05), 0.0), Complex(0.0, 0.0)),
        static_cast<std::uint64_t>(k) * frames,
        static_cast<std::uint64_t>(k + 1) * frames, 99);
    fringe.phase.push_back(delta);
    fringe.value.push_back(static_cast<double>(rec.singles[0]) /
                           static_cast<double>(frames));
  }
  CHECK(lopsim::fringe_visibility(fringe) == 1.0);
}

TEST_CASE("single-photon statistics equal classical fractions on random circuits") {
  const auto report = lopsim::equivalence_check(100, 6, 424242);
  CHECK(report.trials == 100);
  CHECK(report.max_modes == 6);
  CHECK(report.max_deviation <= 1e-12);
}

TEST_CASE("equivalence holds even for deep circuits and a single mode") {
  const auto trivial = lopsim::equivalence_check(5, 1, 3);
  CHECK(trivial.max_deviation <= 1e-15);

  lopsim::CounterRng rng(11002, 0);
  const TransferMatrix u = lopsim::compile(lopsim::random_circuit(4, 200, rng));
  for (int j = 0; j < 4; ++j) {
    CoherentField field = CoherentField::Zero(4);
    field(j) = Complex(1.0, 0.0);
    const double dev = (lopsim::single_photon_distribution(u, j) -
                        lopsim::output_fractions(u, field))
                           .cwiseAbs()
                           .maxCoeff();
    CHECK(dev <= 1e-10);
  }
}

TEST_CASE("equivalence_check validates its arguments") {
  CHECK_THROWS_AS(lopsim::equivalence_check(0, 6, 1), std::invalid_argument);
  CHECK_THROWS_AS(lopsim::equivalence_check(10, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(lopsim::equivalence_check(10, 17, 1), std::invalid_argument);
}
