#include "lopsim/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lopsim/circuit.hpp"
#include "lopsim/classical.hpp"
#include "lopsim/errors.hpp"
#include "lopsim/quantum.hpp"
#include "lopsim/statistics.hpp"
#include "lopsim/text.hpp"
#include "lopsim/transfer.hpp"

namespace lopsim::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCircuit = 2;
constexpr int kExitNumerical = 3;

// Carries a fully formatted message and the process exit code to the top of
// run(); used for everything the generic exception mapping can't classify.
struct ExitWith {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ExitWith{kExitUsage, "cannot open circuit file: " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CircuitSpec load_spec(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw ExitWith{kExitCircuit, path + ":" + std::to_string(e.line()) + ":" +
                                     std::to_string(e.column()) + ": " + e.message()};
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  file << text;
  if (!file) throw ExitWith{kExitUsage, "cannot write output file: " + out_path};
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    parts.push_back(s.substr(start, end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

// [+-]?<double> starting at `at`; returns the value and one-past-end position.
std::optional<std::pair<double, std::size_t>> scan_signed(const std::string& s,
                                                          std::size_t at) {
  std::size_t p = at;
  double sign = 1.0;
  if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
    if (s[p] == '-') sign = -1.0;
    ++p;
  }
  double value = 0.0;
  const auto res = std::from_chars(s.data() + p, s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr == s.data() + p) return std::nullopt;
  return std::make_pair(sign * value, static_cast<std::size_t>(res.ptr - s.data()));
}

// Accepts a, bi, a+bi, a-bi with unit shorthands i, +i, -i.
Complex parse_complex(const std::string& s) {
  const ExitWith bad{kExitUsage, "bad complex amplitude '" + s +
                                     "' (expected forms: 1.5, -2i, 0.5-0.25i)"};
  if (s.empty()) throw bad;

  const auto unit_imag = [&](std::size_t at) -> std::optional<double> {
    double sign = 1.0;
    if (at < s.size() && (s[at] == '+' || s[at] == '-')) {
      if (s[at] == '-') sign = -1.0;
      ++at;
    }
    if (at + 1 == s.size() && s[at] == 'i') return sign;
    return std::nullopt;
  };

  double re = 0.0, im = 0.0;
  const auto first = scan_signed(s, 0);
  if (!first) {
    const auto lone = unit_imag(0);
    if (!lone) throw bad;
    im = *lone;
  } else if (first->second < s.size() && s[first->second] == 'i') {
    if (first->second + 1 != s.size()) throw bad;
    im = first->first;
  } else {
    re = first->first;
    if (first->second != s.size()) {
      if (const auto shorthand = unit_imag(first->second)) {
        im = *shorthand;
      } else {
        const auto second = scan_signed(s, first->second);
        if (!second || (s[first->second] != '+' && s[first->second] != '-'))
          throw bad;
        if (second->second + 1 != s.size() || s[second->second] != 'i') throw bad;
        im = second->first;
      }
    }
  }
  if (!std::isfinite(re) || !std::isfinite(im))
    throw ExitWith{kExitUsage, "complex amplitude '" + s + "' must be finite"};
  return Complex(re, im);
}

CoherentField parse_field(const std::string& raw, int modes) {
  const std::vector<std::string> parts = split(raw, ',');
  if (static_cast<int>(parts.size()) != modes)
    throw ExitWith{kExitUsage, "--in lists " + std::to_string(parts.size()) +
                                   " amplitudes for a " + std::to_string(modes) +
                                   "-mode circuit"};
  CoherentField field(modes);
  for (int i = 0; i < modes; ++i) field(i) = parse_complex(parts[static_cast<std::size_t>(i)]);
  return field;
}

int parse_int_token(const std::string& s, const char* what) {
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ExitWith{kExitUsage, std::string("bad ") + what + " '" + s + "'"};
  return value;
}

FockOccupation parse_occupation(const std::string& raw, int modes) {
  const std::vector<std::string> parts = split(raw, ',');
  if (static_cast<int>(parts.size()) != modes)
    throw ExitWith{kExitUsage, "--in lists " + std::to_string(parts.size()) +
                                   " counts for a " + std::to_string(modes) +
                                   "-mode circuit"};
  FockOccupation occ;
  occ.reserve(parts.size());
  for (const std::string& p : parts) {
    const int n = parse_int_token(p, "photon count");
    if (n < 0) throw ExitWith{kExitUsage, "photon counts must be >= 0"};
    occ.push_back(n);
  }
  return occ;
}

double parse_double_token(const std::string& s, const char* what) {
  const auto scanned = scan_signed(s, 0);
  if (!scanned || scanned->second != s.size() || !std::isfinite(scanned->first))
    throw ExitWith{kExitUsage, std::string("bad ") + what + " '" + s + "'"};
  return scanned->first;
}

std::vector<double> parse_grid(const std::string& raw) {
  const std::vector<std::string> parts = split(raw, ':');
  if (parts.size() != 3)
    throw ExitWith{kExitUsage, "--grid expects <start>:<stop>:<steps>, got '" + raw + "'"};
  const double start = parse_double_token(parts[0], "grid start");
  const double stop = parse_double_token(parts[1], "grid stop");
  const int steps = parse_int_token(parts[2], "grid step count");
  if (steps < 1) throw ExitWith{kExitUsage, "--grid needs at least one step"};
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k)
    grid[static_cast<std::size_t>(k)] =
        steps == 1 ? start : start + (stop - start) * k / (steps - 1);
  return grid;
}

std::pair<int, int> parse_detector_pair(const std::string& raw, int modes) {
  const std::vector<std::string> parts = split(raw, ',');
  if (parts.size() != 2)
    throw ExitWith{kExitUsage, "--detectors expects two indices like 0,1"};
  const int i = parse_int_token(parts[0], "detector index");
  const int j = parse_int_token(parts[1], "detector index");
  for (int d : {i, j})
    if (d < 0 || d >= modes)
      throw ExitWith{kExitUsage,
                     "detector index " + std::to_string(d) + " out of range"};
  if (i == j) throw ExitWith{kExitUsage, "detectors must differ"};
  return {i, j};
}

std::string matrix_csv(const TransferMatrix& u) {
  std::string csv = "# modes " + std::to_string(u.modes()) + "\n";
  csv += "row,col,re,im\n";
  for (int i = 0; i < u.modes(); ++i)
    for (int j = 0; j < u.modes(); ++j) {
      const Complex z = u.matrix()(i, j);
      csv += std::to_string(i) + "," + std::to_string(j) + "," +
             format_double(z.real()) + "," + format_double(z.imag()) + "\n";
    }
  return csv;
}

std::string occupation_label(const FockOccupation& occ) {
  std::string label;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (i) label += ',';
    label += std::to_string(occ[i]);
  }
  return label;
}

// --- subcommand bodies -----------------------------------------------------

int do_compile(const std::string& path, double tol, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  const TransferMatrix u = compile(load_spec(path));
  const UnitarityReport report = validate_unitary(u.matrix(), tol);
  if (!report.pass) {
    err << "error: compiled matrix misses unitarity tolerance " << format_double(tol)
        << " (deviation " << format_double(report.max_deviation) << ")\n";
    return kExitNumerical;
  }
  emit(matrix_csv(u), out_path, out);
  return kExitOk;
}

int do_classical(const std::string& path, const std::string& in_raw,
                 const std::string& out_path, std::ostream& out) {
  const TransferMatrix u = compile(load_spec(path));
  const CoherentField in = parse_field(in_raw, u.modes());
  const CoherentField field = propagate_classical(u, in);
  const Eigen::VectorXd intensity = intensities(field);
  const Eigen::VectorXd fraction = output_fractions(u, in);
  std::string csv = "mode,re,im,intensity,fraction\n";
  for (int i = 0; i < u.modes(); ++i)
    csv += std::to_string(i) + "," + format_double(field(i).real()) + "," +
           format_double(field(i).imag()) + "," + format_double(intensity(i)) + "," +
           format_double(fraction(i)) + "\n";
  emit(csv, out_path, out);
  return kExitOk;
}

int do_single_photon(const std::string& path, int in_mode, const std::string& out_path,
                     std::ostream& out) {
  const TransferMatrix u = compile(load_spec(path));
  if (in_mode < 0 || in_mode >= u.modes())
    throw ExitWith{kExitUsage, "--in-mode " + std::to_string(in_mode) +
                                   " out of range for " + std::to_string(u.modes()) +
                                   " modes"};
  const Eigen::VectorXd dist = single_photon_distribution(u, in_mode);
  std::string csv = "outcome,probability\n";
  for (int i = 0; i < u.modes(); ++i)
    csv += std::to_string(i) + "," + format_double(dist(i)) + "\n";
  emit(csv, out_path, out);
  return kExitOk;
}

int do_fock(const std::string& path, const std::string& in_raw,
            const std::string& out_path, std::ostream& out) {
  const TransferMatrix u = compile(load_spec(path));
  const FockOccupation in = parse_occupation(in_raw, u.modes());
  const FockBasisVector state = fock_evolve(u, in);
  std::string csv = "outcome,probability\n";
  for (const auto& [occ, prob] : state.probabilities())
    csv += csv_quote(occupation_label(occ)) + "," + format_double(prob) + "\n";
  emit(csv, out_path, out);
  return kExitOk;
}

int do_coherent(const std::string& path, const std::string& in_raw,
                const std::string& out_path, std::ostream& out) {
  const TransferMatrix u = compile(load_spec(path));
  const CoherentField in = parse_field(in_raw, u.modes());
  const CoherentField beta = propagate_coherent(u, in);
  std::string csv = "mode,re,im,mean_photons,click_probability\n";
  for (int i = 0; i < u.modes(); ++i) {
    const double lambda = std::norm(beta(i));
    csv += std::to_string(i) + "," + format_double(beta(i).real()) + "," +
           format_double(beta(i).imag()) + "," + format_double(lambda) + "," +
           format_double(-std::expm1(-lambda)) + "\n";
  }
  emit(csv, out_path, out);
  return kExitOk;
}

int do_hom(const std::string& grid_raw, const std::string& out_path, std::ostream& out) {
  const std::vector<double> grid = parse_grid(grid_raw);
  for (double T : grid)
    if (!(T >= 0.0 && T <= 1.0))
      throw ExitWith{kExitUsage, "--grid transmittances must lie in [0, 1]"};
  std::string csv = "transmittance,p11,p20,p02\n";
  for (const HomPoint& pt : hom_scan(grid))
    csv += format_double(pt.transmittance) + "," + format_double(pt.p11) + "," +
           format_double(pt.p20) + "," + format_double(pt.p02) + "\n";
  emit(csv, out_path, out);
  return kExitOk;
}

int do_antibunch(const std::string& path, bool have_mode, int in_mode,
                 const std::string& in_raw, const std::string& detectors_raw,
                 const std::string& out_path, std::ostream& out) {
  const TransferMatrix u = compile(load_spec(path));
  const auto [det_i, det_j] = parse_detector_pair(detectors_raw, u.modes());
  AnticorrelationReport report;
  if (have_mode) {
    if (in_mode < 0 || in_mode >= u.modes())
      throw ExitWith{kExitUsage, "--in-mode " + std::to_string(in_mode) +
                                     " out of range for " + std::to_string(u.modes()) +
                                     " modes"};
    report = anticorrelation_single_photon(u, in_mode, det_i, det_j);
  } else {
    report = anticorrelation_coherent(u, parse_field(in_raw, u.modes()), det_i, det_j);
  }
  std::string csv = "quantity,value\n";
  csv += "p_first," + format_double(report.p_first) + "\n";
  csv += "p_second," + format_double(report.p_second) + "\n";
  csv += "p_coincidence," + format_double(report.p_coincidence) + "\n";
  csv += "anticorrelation," + format_double(report.value) + "\n";
  emit(csv, out_path, out);
  return kExitOk;
}

std::string counts_csv(const CountRecord& rec) {
  std::string csv = "# frames " + std::to_string(rec.frames) + "\n";
  csv += "# seed " + std::to_string(rec.seed) + "\n";
  csv += "detector,singles\n";
  const int m = static_cast<int>(rec.singles.size());
  for (int i = 0; i < m; ++i)
    csv += std::to_string(i) + "," +
           std::to_string(rec.singles[static_cast<std::size_t>(i)]) + "\n";
  csv += "i,j,coincidences\n";
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      csv += std::to_string(i) + "," + std::to_string(j) + "," +
             std::to_string(
                 rec.coincidences[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) +
             "\n";
  return csv;
}

int do_sample(const std::string& path, const std::string& in_raw, std::uint64_t frames,
              std::uint64_t seed, const std::string& grid_raw, bool have_sweep,
              int sweep_element, int detector, const std::string& out_path,
              std::ostream& out) {
  if (frames < 1) throw ExitWith{kExitUsage, "--frames must be >= 1"};
  CircuitSpec spec = load_spec(path);
  const CoherentField in = parse_field(in_raw, spec.modes);

  if (grid_raw.empty()) {
    if (have_sweep)
      throw ExitWith{kExitUsage, "--sweep-element requires --grid"};
    const CountRecord rec = sample_frames(compile(spec), in, frames, seed);
    emit(counts_csv(rec), out_path, out);
    return kExitOk;
  }

  if (!have_sweep)
    throw ExitWith{kExitUsage, "--grid requires --sweep-element <k> naming a phase element"};
  if (sweep_element < 0 || sweep_element >= static_cast<int>(spec.elements.size()))
    throw ExitWith{kExitUsage, "--sweep-element " + std::to_string(sweep_element) +
                                   " out of range (circuit has " +
                                   std::to_string(spec.elements.size()) + " elements)"};
  CircuitElement& swept = spec.elements[static_cast<std::size_t>(sweep_element)];
  if (swept.kind != ElementKind::Phase)
    throw ExitWith{kExitUsage, "--sweep-element " + std::to_string(sweep_element) +
                                   " is not a phase element"};
  if (detector < 0 || detector >= spec.modes)
    throw ExitWith{kExitUsage, "--detector " + std::to_string(detector) +
                                   " out of range for " + std::to_string(spec.modes) +
                                   " modes"};

  const std::vector<double> grid = parse_grid(grid_raw);
  std::string csv = "# frames " + std::to_string(frames) + "\n";
  csv += "# seed " + std::to_string(seed) + "\n";
  csv += "# sweep-element " + std::to_string(sweep_element) + "\n";
  csv += "# detector " + std::to_string(detector) + "\n";
  csv += "phase,value\n";
  for (std::size_t p = 0; p < grid.size(); ++p) {
    swept.phi = grid[p];
    const TransferMatrix u = compile(spec);
    // Frame indices run globally across the sweep so every point draws from
    // disjoint RNG streams of the same seeded run.
    const CountRecord rec =
        sample_frame_range(u, in, p * frames, (p + 1) * frames, seed);
    const double rate =
        static_cast<double>(rec.singles[static_cast<std::size_t>(detector)]) /
        static_cast<double>(frames);
    csv += format_double(grid[p]) + "," + format_double(rate) + "\n";
  }
  emit(csv, out_path, out);
  return kExitOk;
}

int do_equiv_check(int trials, int max_modes, std::uint64_t seed, double tol,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (trials < 1) throw ExitWith{kExitUsage, "--trials must be >= 1"};
  if (max_modes < 1 || max_modes > kMaxModes)
    throw ExitWith{kExitUsage,
                   "--max-modes must be in [1, " + std::to_string(kMaxModes) + "]"};
  const EquivalenceReport report = equivalence_check(trials, max_modes, seed);
  const bool pass = report.max_deviation <= tol;
  std::string csv = "quantity,value\n";
  csv += "trials," + std::to_string(report.trials) + "\n";
  csv += "max_modes," + std::to_string(report.max_modes) + "\n";
  csv += "seed," + std::to_string(report.seed) + "\n";
  csv += "max_deviation," + format_double(report.max_deviation) + "\n";
  csv += "tolerance," + format_double(tol) + "\n";
  csv += std::string("pass,") + (pass ? "1" : "0") + "\n";
  emit(csv, out_path, out);
  if (!pass) {
    err << "error: single-photon/classical deviation "
        << format_double(report.max_deviation) << " exceeds tolerance "
        << format_double(tol) << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"passive linear-optics interferometer simulator"};
  app.name("lopsim");
  app.require_subcommand(1);

  std::string compile_path, compile_out;
  double compile_tol = kUnitarityTol;
  auto* compile_cmd =
      app.add_subcommand("compile", "compile a circuit file to its transfer matrix");
  compile_cmd->add_option("circuit", compile_path, "circuit file")->required();
  compile_cmd->add_option("--tol", compile_tol, "unitarity tolerance");
  compile_cmd->add_option("--out", compile_out, "write CSV here instead of stdout");

  std::string classical_path, classical_in, classical_out;
  auto* classical_cmd =
      app.add_subcommand("classical", "propagate a classical field through a circuit");
  classical_cmd->add_option("circuit", classical_path, "circuit file")->required();
  classical_cmd->add_option("--in", classical_in, "input amplitudes, e.g. 1+0i,0.5-0.25i")
      ->required();
  classical_cmd->add_option("--out", classical_out, "write CSV here instead of stdout");

  std::string sp_path, sp_out;
  int sp_mode = 0;
  auto* sp_cmd = app.add_subcommand("single-photon",
                                    "detection probabilities for one injected photon");
  sp_cmd->add_option("circuit", sp_path, "circuit file")->required();
  sp_cmd->add_option("--in-mode", sp_mode, "input mode of the photon")->required();
  sp_cmd->add_option("--out", sp_out, "write CSV here instead of stdout");

  std::string fock_path, fock_in, fock_out;
  auto* fock_cmd =
      app.add_subcommand("fock", "evolve a photon-number state and list outcomes");
  fock_cmd->add_option("circuit", fock_path, "circuit file")->required();
  fock_cmd->add_option("--in", fock_in, "input occupation, e.g. 1,1")->required();
  fock_cmd->add_option("--out", fock_out, "write CSV here instead of stdout");

  std::string coh_path, coh_in, coh_out;
  auto* coh_cmd = app.add_subcommand(
      "coherent", "propagate coherent amplitudes; report per-mode statistics");
  coh_cmd->add_option("circuit", coh_path, "circuit file")->required();
  coh_cmd->add_option("--in", coh_in, "input amplitudes, e.g. 1+0i,0+0i")->required();
  coh_cmd->add_option("--out", coh_out, "write CSV here instead of stdout");

  std::string hom_grid = "0:1:101", hom_out;
  auto* hom_cmd = app.add_subcommand(
      "hom", "two-photon interference versus splitter transmittance");
  hom_cmd->add_option("--grid", hom_grid, "transmittance grid start:stop:steps");
  hom_cmd->add_option("--out", hom_out, "write CSV here instead of stdout");

  std::string anti_path, anti_in, anti_detectors = "0,1", anti_out;
  int anti_mode = 0;
  auto* anti_cmd = app.add_subcommand(
      "antibunch", "anticorrelation parameter for single-photon or coherent input");
  anti_cmd->add_option("circuit", anti_path, "circuit file")->required();
  anti_cmd->add_option("--in-mode", anti_mode, "single-photon input mode");
  anti_cmd->add_option("--in", anti_in, "coherent input amplitudes");
  anti_cmd->add_option("--detectors", anti_detectors, "detector pair, default 0,1");
  anti_cmd->add_option("--out", anti_out, "write CSV here instead of stdout");

  std::string sample_path, sample_in, sample_grid, sample_out;
  std::uint64_t sample_frames_n = 10000, sample_seed = 0;
  int sample_sweep = 0, sample_detector = 0;
  auto* sample_cmd = app.add_subcommand(
      "sample", "Monte Carlo click statistics with threshold detectors");
  sample_cmd->add_option("circuit", sample_path, "circuit file")->required();
  sample_cmd->add_option("--in", sample_in, "coherent input amplitudes")->required();
  sample_cmd->add_option("--frames", sample_frames_n, "frames per run (default 10000)");
  sample_cmd->add_option("--seed", sample_seed, "RNG seed (default 0)");
  sample_cmd->add_option("--grid", sample_grid,
                         "phase grid start:stop:steps; switches to fringe output");
  auto* sweep_opt = sample_cmd->add_option(
      "--sweep-element", sample_sweep, "index of the phase element the grid re-binds");
  sample_cmd->add_option("--detector", sample_detector,
                         "detector reported in fringe output (default 0)");
  sample_cmd->add_option("--out", sample_out, "write CSV here instead of stdout");

  std::string equiv_out;
  int equiv_trials = 100, equiv_max_modes = 6;
  std::uint64_t equiv_seed = 0;
  double equiv_tol = kUnitarityTol;
  auto* equiv_cmd = app.add_subcommand(
      "equiv-check",
      "compare single-photon statistics against classical fractions on random circuits");
  equiv_cmd->add_option("--trials", equiv_trials, "number of random circuits");
  equiv_cmd->add_option("--max-modes", equiv_max_modes, "largest mode count drawn");
  equiv_cmd->add_option("--seed", equiv_seed, "RNG seed (default 0)");
  equiv_cmd->add_option("--tol", equiv_tol, "maximum allowed deviation");
  equiv_cmd->add_option("--out", equiv_out, "write CSV here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compile_cmd->parsed())
      return do_compile(compile_path, compile_tol, compile_out, out, err);
    if (classical_cmd->parsed())
      return do_classical(classical_path, classical_in, classical_out, out);
    if (sp_cmd->parsed()) return do_single_photon(sp_path, sp_mode, sp_out, out);
    if (fock_cmd->parsed()) return do_fock(fock_path, fock_in, fock_out, out);
    if (coh_cmd->parsed()) return do_coherent(coh_path, coh_in, coh_out, out);
    if (hom_cmd->parsed()) return do_hom(hom_grid, hom_out, out);
    if (anti_cmd->parsed()) {
      const bool have_mode = anti_cmd->count("--in-mode") > 0;
      const bool have_field = anti_cmd->count("--in") > 0;
      if (have_mode == have_field)
        throw ExitWith{kExitUsage, "antibunch needs exactly one of --in-mode or --in"};
      return do_antibunch(anti_path, have_mode, anti_mode, anti_in, anti_detectors,
                          anti_out, out);
    }
    if (sample_cmd->parsed())
      return do_sample(sample_path, sample_in, sample_frames_n, sample_seed,
                       sample_grid, sweep_opt->count() > 0, sample_sweep,
                       sample_detector, sample_out, out);
    if (equiv_cmd->parsed())
      return do_equiv_check(equiv_trials, equiv_max_modes, equiv_seed, equiv_tol,
                            equiv_out, out, err);
    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const ExitWith& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCircuit;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace lopsim::cli
