// Brute-force references used to cross-validate the closed forms: transfer
// matrix re-assembled from bare index rules, dense matrix powers, and a dense
// complex eigensolver with multiset comparison. Nothing here reuses the
// Fourier decomposition, so agreement with the closed-form path is evidence
// rather than tautology.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qnet/algebra.hpp"
#include "qnet/network.hpp"

namespace qnet::oracle {

// The one-period transfer matrix assembled entry by entry from index rules
// over flat mode indices i = 2k + s (s = 0 for a_k, s = 1 for b_k):
//   A layer:  nonzero only when i and j share a pair, entry a(i%2, j%2);
//   B layer:  odd rows couple to themselves (b11) and to the next even mode
//             (b12); even rows couple to the previous odd mode (b21) and to
//             themselves (b22), all indices cyclic.
inline CMatrix reference_transfer_matrix(const NetworkSpec& spec) {
  const int dim = spec.modes();
  const NodeMatrix a = node_matrix(spec.theta);
  const NodeMatrix b = node_matrix(spec.phi);
  const Complex am[2][2] = {{a.m11, a.m12}, {a.m21, a.m22}};

  CMatrix la(dim, dim);
  CMatrix lb(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      la(i, j) = (i / 2 == j / 2) ? am[i % 2][j % 2] : Complex{0.0, 0.0};
      Complex entry{0.0, 0.0};
      if (i % 2 == 1) {
        if (j == i) entry = b.m11;
        if (j == (i + 1) % dim) entry = b.m12;
      } else {
        if (j == (i + dim - 1) % dim) entry = b.m21;
        if (j == i) entry = b.m22;
      }
      lb(i, j) = entry;
    }
  }
  return la * lb;
}

// M-th power by repeated squaring. M = 0 gives the identity.
inline CMatrix dense_power(const CMatrix& m, int power) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dense_power: matrix must be square");
  if (power < 0) throw std::invalid_argument("dense_power: power must be non-negative");
  CMatrix acc = CMatrix::Identity(m.rows(), m.cols());
  CMatrix base = m;
  for (int e = power; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

// All eigenvalues, sorted by (real, imaginary).
using EigenMultiset = std::vector<Complex>;

inline EigenMultiset dense_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dense_eigenvalues: matrix must be square");
  if (m.rows() > 64) throw std::invalid_argument("dense_eigenvalues: desk-scale solver, dim <= 64");

  Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw numerical_error("dense_eigenvalues: eigenvalue iteration did not converge");

  // Residual check per eigenpair before the eigenvectors are discarded.
  for (int i = 0; i < m.rows(); ++i) {
    const Complex lambda = solver.eigenvalues()(i);
    const Eigen::VectorXcd v = solver.eigenvectors().col(i);
    const double residual = (m * v - lambda * v).norm();
    if (!(residual <= 1e-7))
      throw numerical_error("dense_eigenvalues: eigenpair " + std::to_string(i) +
                            " residual " + std::to_string(residual));
  }

  EigenMultiset values(solver.eigenvalues().data(), solver.eigenvalues().data() + m.rows());
  std::sort(values.begin(), values.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return values;
}

struct MatchReport {
  double max_distance;
  bool pass;
};

namespace detail {

// Kuhn augmenting-path matching: can every left value be paired with a
// distinct right value at distance <= limit?
inline bool matchable_within(const std::vector<Complex>& a, const std::vector<Complex>& b, double limit) {
  const int n = static_cast<int>(a.size());
  std::vector<int> owner(n, -1);
  std::vector<char> visited;

  auto try_place = [&](auto&& self, int i) -> bool {
    for (int j = 0; j < n; ++j) {
      if (visited[j] || std::abs(a[i] - b[j]) > limit) continue;
      visited[j] = 1;
      if (owner[j] < 0 || self(self, owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };

  for (int i = 0; i < n; ++i) {
    visited.assign(n, 0);
    if (!try_place(try_place, i)) return false;
  }
  return true;
}

}  // namespace detail

// Pair the two multisets and report the largest pair distance. Greedy
// nearest-match after sorting is tried first; when it cannot certify the
// tolerance the exact bottleneck matching is computed instead (binary search
// over candidate distances with augmenting-path feasibility), so clustered
// spectra cannot produce a false failure.
inline MatchReport compare_multisets(EigenMultiset a, EigenMultiset b, double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("compare_multisets: size mismatch");
  if (a.empty()) return {0.0, true};
  auto by_parts = [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  };
  std::sort(a.begin(), a.end(), by_parts);
  std::sort(b.begin(), b.end(), by_parts);

  const int n = static_cast<int>(a.size());
  std::vector<char> used(n, 0);
  double greedy = 0.0;
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    used[best] = 1;
    greedy = std::max(greedy, best_d);
  }
  if (greedy <= tol) return {greedy, true};

  // Exact bottleneck: smallest candidate distance admitting a perfect matching.
  std::vector<double> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) candidates.push_back(std::abs(a[i] - b[j]));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (detail::matchable_within(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  const double bottleneck = candidates[lo];
  return {bottleneck, bottleneck <= tol};
}

}  // namespace qnet::oracle
