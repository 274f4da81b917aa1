#include "lopsim/quantum.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "lopsim/errors.hpp"
#include "lopsim/text.hpp"

namespace lopsim {
namespace {

constexpr double kTailTol = 1e-12;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double occupation_factorial(const FockOccupation& occ) {
  double f = 1.0;
  for (int n : occ) f *= factorial(n);
  return f;
}

// Visits every occupation of `total` photons over `modes` modes in ascending
// lexicographic order.
void for_each_occupation(int modes, int total,
                         const std::function<void(const FockOccupation&)>& visit) {
  FockOccupation occ(static_cast<std::size_t>(modes), 0);
  std::function<void(int, int)> rec = [&](int mode, int left) {
    if (mode == modes - 1) {
      occ[static_cast<std::size_t>(mode)] = left;
      visit(occ);
      return;
    }
    for (int n = 0; n <= left; ++n) {
      occ[static_cast<std::size_t>(mode)] = n;
      rec(mode + 1, left - n);
    }
  };
  rec(0, total);
}

int checked_total(const TransferMatrix& u, const FockOccupation& in, int max_photons,
                  int max_modes, const char* who) {
  if (static_cast<int>(in.size()) != u.modes())
    throw std::invalid_argument(std::string(who) + ": occupation has " +
                                std::to_string(in.size()) + " entries for " +
                                std::to_string(u.modes()) + " modes");
  if (u.modes() > max_modes)
    throw std::invalid_argument(std::string(who) + ": supports at most " +
                                std::to_string(max_modes) + " modes");
  int total = 0;
  for (int n : in) {
    if (n < 0)
      throw std::invalid_argument(std::string(who) + ": photon counts must be >= 0");
    total += n;
  }
  if (total > max_photons)
    throw std::invalid_argument(std::string(who) + ": supports at most " +
                                std::to_string(max_photons) + " photons, got " +
                                std::to_string(total));
  return total;
}

// exp(K) by scaling and squaring around a truncated Taylor series. The
// operators passed in have modest norms after scaling, so the plain series
// converges in well under the iteration cap.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& k) {
  const Eigen::Index dim = k.rows();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i)
    norm = std::max(norm, k.row(i).cwiseAbs().sum());

  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  const Eigen::MatrixXcd a = k * scale;
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd result = term;
  for (int i = 1; i <= 32; ++i) {
    term = (term * a) / static_cast<double>(i);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-20) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace

FockBasisVector::FockBasisVector(int modes, int total_photons)
    : modes_(modes), total_photons_(total_photons) {
  if (modes < 1) throw std::invalid_argument("FockBasisVector: modes must be >= 1");
  if (total_photons < 0)
    throw std::invalid_argument("FockBasisVector: photon number must be >= 0");
}

void FockBasisVector::check_occupation(const FockOccupation& occ) const {
  if (static_cast<int>(occ.size()) != modes_)
    throw std::invalid_argument("occupation has " + std::to_string(occ.size()) +
                                " entries for " + std::to_string(modes_) + " modes");
  int total = 0;
  for (int n : occ) {
    if (n < 0) throw std::invalid_argument("photon counts must be >= 0");
    total += n;
  }
  if (total != total_photons_)
    throw std::invalid_argument("occupation has " + std::to_string(total) +
                                " photons in a " + std::to_string(total_photons_) +
                                "-photon sector");
}

void FockBasisVector::set_amplitude(const FockOccupation& occ, Complex amplitude) {
  check_occupation(occ);
  normalized_ = false;
  terms_[occ] = amplitude;
}

void FockBasisVector::add_amplitude(const FockOccupation& occ, Complex amplitude) {
  check_occupation(occ);
  normalized_ = false;
  terms_[occ] += amplitude;
}

Complex FockBasisVector::amplitude(const FockOccupation& occ) const {
  check_occupation(occ);
  const auto it = terms_.find(occ);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

double FockBasisVector::norm_sq() const {
  double total = 0.0;
  for (const auto& [occ, amp] : terms_) total += std::norm(amp);
  return total;
}

std::map<FockOccupation, double> FockBasisVector::probabilities() const {
  if (!normalized_)
    throw ValidationError("probabilities requested from an unnormalized state");
  std::map<FockOccupation, double> probs;
  for (const auto& [occ, amp] : terms_) probs[occ] = std::norm(amp);
  return probs;
}

void FockBasisVector::mark_normalized(double tol) {
  const double deviation = std::abs(norm_sq() - 1.0);
  if (!(deviation <= tol))
    throw ValidationError("state norm deviates from 1 by " + format_double(deviation));
  normalized_ = true;
}

CoherentField propagate_coherent(const TransferMatrix& u, const CoherentField& alphas) {
  return propagate_classical(u, alphas);
}

PoissonDistribution poisson_number_distribution(Complex alpha, int n_max) {
  if (n_max < 0)
    throw std::invalid_argument("poisson_number_distribution: n_max must be >= 0");
  const double lambda = std::norm(alpha);
  PoissonDistribution dist;
  dist.probability.resize(static_cast<std::size_t>(n_max) + 1);
  double p = std::exp(-lambda);
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    dist.probability[static_cast<std::size_t>(n)] = p;
    sum += p;
    p *= lambda / (n + 1);
  }
  dist.tail_mass = std::max(0.0, 1.0 - sum);
  return dist;
}

Eigen::VectorXd single_photon_distribution(const TransferMatrix& u, int in_mode) {
  if (in_mode < 0 || in_mode >= u.modes())
    throw std::invalid_argument("single_photon_distribution: input mode " +
                                std::to_string(in_mode) + " out of range");
  return u.matrix().col(in_mode).cwiseAbs2();
}

Complex permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("permanent: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (n > kMaxPermanentDim)
    throw std::invalid_argument("permanent: dimension exceeds " +
                                std::to_string(kMaxPermanentDim));
  if (n == 0) return Complex(1.0, 0.0);

  // Ryser: per(A) = sum_{S nonempty} (-1)^{n - |S|} prod_i sum_{j in S} a_ij,
  // walking subsets in Gray-code order so each step updates one column.
  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t changed = next ^ gray;
    const int j = std::countr_zero(changed);
    if (next & changed)
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += a(i, j);
    else
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] -= a(i, j);
    gray = next;

    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
    if ((n - std::popcount(gray)) & 1)
      total -= prod;
    else
      total += prod;
  }
  return total;
}

FockBasisVector fock_evolve(const TransferMatrix& u, const FockOccupation& in) {
  const int total = checked_total(u, in, kMaxFockPhotons, kMaxModes, "fock_evolve");
  const int m = u.modes();

  std::vector<int> cols;  // column j repeated in[j] times
  cols.reserve(static_cast<std::size_t>(total));
  for (int j = 0; j < m; ++j)
    for (int rep = 0; rep < in[static_cast<std::size_t>(j)]; ++rep) cols.push_back(j);
  const double in_fact = occupation_factorial(in);

  FockBasisVector state(m, total);
  Eigen::MatrixXcd sub(total, total);
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(total));
  for_each_occupation(m, total, [&](const FockOccupation& out_occ) {
    rows.clear();
    for (int i = 0; i < m; ++i)
      for (int rep = 0; rep < out_occ[static_cast<std::size_t>(i)]; ++rep)
        rows.push_back(i);
    for (int p = 0; p < total; ++p)
      for (int q = 0; q < total; ++q)
        sub(p, q) = u.matrix()(rows[static_cast<std::size_t>(p)],
                               cols[static_cast<std::size_t>(q)]);
    const Complex amp =
        permanent(sub) / std::sqrt(in_fact * occupation_factorial(out_occ));
    state.set_amplitude(out_occ, amp);
  });
  state.mark_normalized();
  return state;
}

FockBasisVector fock_evolve_bruteforce(const TransferMatrix& u, const FockOccupation& in) {
  const int total = checked_total(u, in, kMaxBruteforcePhotons, kMaxBruteforceModes,
                                  "fock_evolve_bruteforce");
  const int m = u.modes();

  // Expand prod_j (sum_i U_ij b_i^dag)^{n_j} |vac> one creation operator at a
  // time, tracking the coefficient of each monomial prod_i (b_i^dag)^{m_i}.
  std::map<FockOccupation, Complex> poly;
  poly[FockOccupation(static_cast<std::size_t>(m), 0)] = Complex(1.0, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int rep = 0; rep < in[static_cast<std::size_t>(j)]; ++rep) {
      std::map<FockOccupation, Complex> next;
      for (const auto& [occ, coeff] : poly) {
        for (int i = 0; i < m; ++i) {
          FockOccupation grown = occ;
          ++grown[static_cast<std::size_t>(i)];
          next[grown] += coeff * u.matrix()(i, j);
        }
      }
      poly = std::move(next);
    }
  }

  // prod_i (b_i^dag)^{m_i} |vac> = sqrt(prod_i m_i!) |m>, and the input ket
  // carries 1 / sqrt(prod_j n_j!).
  const double in_fact = occupation_factorial(in);
  FockBasisVector state(m, total);
  for (const auto& [occ, coeff] : poly)
    state.set_amplitude(occ, coeff * std::sqrt(occupation_factorial(occ) / in_fact));
  state.mark_normalized();
  return state;
}

FockBasisVector two_photon_component_coherent(Complex alpha1, Complex alpha2) {
  const Complex c20 = alpha1 * alpha1 / std::sqrt(2.0);
  const Complex c11 = alpha1 * alpha2;
  const Complex c02 = alpha2 * alpha2 / std::sqrt(2.0);
  FockBasisVector state(2, 2);
  if (c20 != Complex(0.0, 0.0)) state.set_amplitude({2, 0}, c20);
  if (c11 != Complex(0.0, 0.0)) state.set_amplitude({1, 1}, c11);
  if (c02 != Complex(0.0, 0.0)) state.set_amplitude({0, 2}, c02);
  return state;
}

Complex coincidence_coefficient(Complex t, Complex r, Complex alpha1, Complex alpha2) {
  const double flux = std::norm(t) + std::norm(r) - 1.0;
  const Complex cross = std::conj(t) * r + std::conj(r) * t;
  if (std::abs(flux) > kUnitarityTol || std::abs(cross) > kUnitarityTol)
    throw std::invalid_argument(
        "coincidence_coefficient: (t, r) do not form a beam splitter");
  return (alpha1 * t + alpha2 * r) * (alpha1 * r + alpha2 * t);
}

Eigen::MatrixXcd annihilation_matrix(int cutoff) {
  if (cutoff < 1)
    throw std::invalid_argument("annihilation_matrix: cutoff must be >= 1");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd displacement_matrix(Complex alpha, int cutoff) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw std::invalid_argument("displacement_matrix: alpha must be finite");
  const Eigen::MatrixXcd a = annihilation_matrix(cutoff);
  const Eigen::MatrixXcd k = alpha * a.adjoint() - std::conj(alpha) * a;
  return expm(k);
}

DisplacedAnnihilation displaced_annihilation(Complex alpha, int cutoff) {
  // Displacing a state near the cutoff reaches above it ((sqrt(n)+|alpha|)^2
  // exceeds n), so a product taken at the requested dimension leaks O(1)
  // truncation error into the low-lying block. Forming the product in a
  // doubled working space and keeping the top corner recovers the compression
  // of the exact identity to machine precision for |alpha|^2 well under the
  // cutoff.
  const int working = 2 * cutoff;
  const Eigen::MatrixXcd a = annihilation_matrix(working);
  const Eigen::MatrixXcd d = displacement_matrix(alpha, working);
  const Eigen::MatrixXcd shifted = d.adjoint() * a * d;
  DisplacedAnnihilation result;
  result.op.cutoff = cutoff;
  result.op.matrix = shifted.topLeftCorner(cutoff + 1, cutoff + 1);
  result.tail_mass = poisson_number_distribution(alpha, cutoff).tail_mass;
  result.cutoff_adequate = result.tail_mass <= kTailTol;
  return result;
}

}  // namespace lopsim
