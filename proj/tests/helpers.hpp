#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "lopsim/circuit.hpp"
#include "lopsim/rng.hpp"
#include "lopsim/transfer.hpp"

namespace lopsim_test {

// Mach-Zehnder transfer matrix multiplied out by hand: splitter (t1, r1),
// arm phases e^{i kl1} / e^{i (kl2 + phi)}, splitter (t2, r2).
inline Eigen::Matrix2cd mz_closed_form(double th1, double th2, double kl1, double kl2,
                                       double phi) {
  using lopsim::Complex;
  const Complex t1(std::cos(th1), 0.0), r1(0.0, std::sin(th1));
  const Complex t2(std::cos(th2), 0.0), r2(0.0, std::sin(th2));
  const Complex e1 = std::polar(1.0, kl1);
  const Complex e2 = std::polar(1.0, kl2 + phi);
  Eigen::Matrix2cd u;
  u(0, 0) = t2 * t1 * e1 + r2 * r1 * e2;
  u(0, 1) = t2 * r1 * e1 + r2 * t1 * e2;
  u(1, 0) = r2 * t1 * e1 + t2 * r1 * e2;
  u(1, 1) = r2 * r1 * e1 + t2 * t1 * e2;
  return u;
}

// Permanent as a literal sum over permutations; exponential, for cross-checks.
inline lopsim::Complex permanent_naive(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  lopsim::Complex total(0.0, 0.0);
  do {
    lopsim::Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= a(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline lopsim::TransferMatrix random_unitary(int modes, int depth,
                                             lopsim::CounterRng& rng) {
  return lopsim::compile(lopsim::random_circuit(modes, depth, rng));
}

inline Eigen::MatrixXcd random_complex_matrix(int n, lopsim::CounterRng& rng) {
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = lopsim::Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  return a;
}

}  // namespace lopsim_test
