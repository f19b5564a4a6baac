// Assembly of the one-period transfer matrix of a 2N-mode nearest-neighbour
// network and its exact block diagonalization over Fourier sectors of the
// node index.
//
// Mode ordering is interleaved throughout: (a_1, b_1, a_2, b_2, ..., a_N, b_N).
// One period applies the A nodes on the direct pairs (a_k, b_k) and then the
// B nodes on the shifted pairs (b_k, a_{k+1}), cyclically closed, so the
// matrix is the A layer times the B layer.
//
// Conventions pinned here (and locked by regression tests against the dense
// oracle):
//  * dft_matrix uses F(k,l) = w^{kl}/sqrt(N), w = exp(i 2 pi / N), zero-based;
//    conjugating the cyclic shift gives diag(1, w, ..., w^{N-1}).
//  * Sector analysis uses the conjugate transform (w^{-kn} synthesis over the
//    node index, identical on both pair members). With that sign, the raw
//    sector blocks carry the closed-form diagonal entries in the right order.
//  * The raw sector block equals the closed-form block only after an extra
//    intra-pair phase diag(1, c_n) with |c_n| = 1 (sector_gauge); the full
//    decomposition transform includes it.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnet/algebra.hpp"

namespace qnet {

using CMatrix = Eigen::MatrixXcd;

// Full description of one network: N node pairs per column (2N modes),
// M periods, the two coupling angles and their regime.
struct NetworkSpec {
  int N = 0;
  int M = 1;
  Rapidity theta;
  Rapidity phi;
  Regime regime = Regime::su11;
  bool ising_constrained = false;

  NetworkSpec(int n, int m, Rapidity theta_, Rapidity phi_, bool constrained)
      : N(n), M(m), theta(theta_), phi(phi_), regime(theta_.regime()), ising_constrained(constrained) {
    if (N < 2) throw std::invalid_argument("NetworkSpec: N must be at least 2 (N = 1 collapses the two layers onto one pair)");
    if (M < 0) throw std::invalid_argument("NetworkSpec: M must be non-negative");
    if (theta.regime() != phi.regime())
      throw std::invalid_argument("NetworkSpec: theta and phi must carry the same regime tag");
    if (ising_constrained) {
      if (regime != Regime::su11)
        throw std::invalid_argument("NetworkSpec: the coupling constraint applies to su11 networks only");
      // Tolerance scaled by cosh(phi): both sides grow with it, and at large
      // phi even the exactly derived theta lands eps * cosh(phi) away.
      const double scale = std::max(1.0, std::cosh(phi.axis()));
      const double defect = std::abs(1.0 / std::tanh(theta.axis()) - std::cosh(phi.axis()));
      if (defect > kDetTol * scale)
        throw std::invalid_argument("NetworkSpec: coth(theta) = cosh(phi) violated by " + std::to_string(defect));
    }
  }

  static NetworkSpec su11(int n, int m, double theta, double phi) {
    return {n, m, Rapidity::su11(theta), Rapidity::su11(phi), false};
  }

  static NetworkSpec su2(int n, int m, double theta_prime, double phi_prime) {
    return {n, m, Rapidity::su2(theta_prime), Rapidity::su2(phi_prime), false};
  }

  // Constrained amplifier column: theta derived from phi.
  static NetworkSpec ising(int n, int m, double phi) {
    const Rapidity p = Rapidity::su11(phi);
    return {n, m, ising_partner_theta(p), p, true};
  }

  int modes() const { return 2 * N; }
};

namespace detail {

inline void require_sector(const NetworkSpec& spec, int n) {
  if (n < 0 || n >= spec.N) throw std::domain_error("sector index n must satisfy 0 <= n < N");
}

// w^p for w = exp(i 2 pi / N), any integer p.
inline Complex omega_pow(int n_nodes, long p) {
  const long q = ((p % n_nodes) + n_nodes) % n_nodes;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(q) / n_nodes);
}

}  // namespace detail

// One-period transfer matrix: block-diagonal A layer on pairs (a_k, b_k)
// times the shifted B layer on pairs (b_k, a_{k+1}), with the wraparound
// entries of the last B block landing in the matrix corners.
inline CMatrix transfer_matrix(const NetworkSpec& spec) {
  const int dim = spec.modes();
  const NodeMatrix a = node_matrix(spec.theta);
  const NodeMatrix b = node_matrix(spec.phi);
  CMatrix la = CMatrix::Zero(dim, dim);
  CMatrix lb = CMatrix::Zero(dim, dim);
  for (int k = 0; k < spec.N; ++k) {
    la(2 * k, 2 * k) = a.m11;
    la(2 * k, 2 * k + 1) = a.m12;
    la(2 * k + 1, 2 * k) = a.m21;
    la(2 * k + 1, 2 * k + 1) = a.m22;
  }
  for (int k = 0; k < spec.N; ++k) {
    const int rb = 2 * k + 1;            // b_k
    const int ra = (2 * k + 2) % dim;    // a_{k+1}, wrapping to a_1
    lb(rb, rb) = b.m11;
    lb(rb, ra) = b.m12;
    lb(ra, rb) = b.m21;
    lb(ra, ra) = b.m22;
  }
  return la * lb;
}

// Unitary DFT, F(k,l) = exp(i 2 pi k l / N) / sqrt(N) with zero-based k, l.
inline CMatrix dft_matrix(int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("dft_matrix: N must be positive");
  CMatrix f(n_nodes, n_nodes);
  for (int k = 0; k < n_nodes; ++k)
    for (int l = 0; l < n_nodes; ++l)
      f(k, l) = detail::omega_pow(n_nodes, static_cast<long>(k) * l) / std::sqrt(static_cast<double>(n_nodes));
  return f;
}

// Cyclic shift, S(k, k+1 mod N) = 1; F^dagger S F = diag(1, w, ..., w^{N-1}).
inline CMatrix shift_matrix(int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("shift_matrix: N must be positive");
  CMatrix s = CMatrix::Zero(n_nodes, n_nodes);
  for (int k = 0; k < n_nodes; ++k) s(k, (k + 1) % n_nodes) = 1.0;
  return s;
}

// Closed-form block of Fourier sector n. With C = cosh and S = i sinh of the
// coupling angles and w = exp(i 2 pi / N):
//
//   [ C(t)C(p) + S(t)S(p) w^-n    C(t)S(p) - C(p)S(t) w^+n ]
//   [ -C(t)S(p) + C(p)S(t) w^-n   C(t)C(p) + S(t)S(p) w^+n ]
//
// Unit determinant; trace/2 = cosh(theta)cosh(phi) - cos(2 pi n/N) sinh(theta)sinh(phi).
inline NodeMatrix sector_block(const NetworkSpec& spec, int n) {
  detail::require_sector(spec, n);
  const Complex i{0.0, 1.0};
  const Complex ct = cosh_c(spec.theta.value());
  const Complex st = i * sinh_c(spec.theta.value());
  const Complex cp = cosh_c(spec.phi.value());
  const Complex sp = i * sinh_c(spec.phi.value());
  const Complex wp = detail::omega_pow(spec.N, n);
  const Complex wm = detail::omega_pow(spec.N, -n);
  return {ct * cp + st * sp * wm, ct * sp - cp * st * wp,
          -ct * sp + cp * st * wm, ct * cp + st * sp * wp};
}

// The sector-n block exactly as it appears in the Fourier-conjugated transfer
// matrix, before the intra-pair phase is fixed: A times the B block with the
// shift phases attached. Diagonally similar to sector_block(spec, n) via
// diag(1, sector_gauge(spec, n)); same trace, determinant and eigenvalues.
inline NodeMatrix sector_block_raw(const NetworkSpec& spec, int n) {
  detail::require_sector(spec, n);
  const NodeMatrix a = node_matrix(spec.theta);
  const NodeMatrix b = node_matrix(spec.phi);
  const Complex wp = detail::omega_pow(spec.N, n);
  const Complex wm = detail::omega_pow(spec.N, -n);
  const NodeMatrix b_shifted{b.m22, b.m21 * wp, b.m12 * wm, b.m11};
  return mat_mul(a, b_shifted);
}

namespace detail {
// Below this, both off-diagonals of a sector block count as zero and the
// intra-pair phase is arbitrary.
inline constexpr double kGaugeDegenerate = 1e-13;
}  // namespace detail

// Unimodular phase c_n aligning the raw sector block with the closed form:
// diag(1, c_n)^-1 raw diag(1, c_n) = sector_block. The off-diagonal moduli of
// the two blocks agree, so the ratio below is a pure phase; when both
// off-diagonals vanish (theta = phi at n = 0, in particular the transparent
// block at the transition) any phase works and 1 is returned.
inline Complex sector_gauge(const NetworkSpec& spec, int n) {
  const NodeMatrix k = sector_block(spec, n);
  const NodeMatrix raw = sector_block_raw(spec, n);
  if (std::abs(raw.m12) > detail::kGaugeDegenerate) return k.m12 / raw.m12;
  if (std::abs(k.m21) > detail::kGaugeDegenerate) return raw.m21 / k.m21;
  return {1.0, 0.0};
}

// Unitary W with W^dagger P W = blockdiag(sector_block(0), ..., sector_block(N-1)):
// the conjugate node-index DFT acting identically on both pair members,
// followed by the per-sector intra-pair phase.
inline CMatrix decomposition_transform(const NetworkSpec& spec) {
  const int dim = spec.modes();
  const double root = std::sqrt(static_cast<double>(spec.N));
  CMatrix w = CMatrix::Zero(dim, dim);
  for (int n = 0; n < spec.N; ++n) {
    const Complex c = sector_gauge(spec, n);
    for (int k = 0; k < spec.N; ++k) {
      const Complex f = detail::omega_pow(spec.N, -static_cast<long>(k) * n) / root;
      w(2 * k, 2 * n) = f;
      w(2 * k + 1, 2 * n + 1) = f * c;
    }
  }
  return w;
}

// One record per Fourier sector: the 2x2 block and its exponent gamma with
// cosh(gamma) = trace/2, Re gamma >= 0.
struct SectorRecord {
  int n;
  NodeMatrix block;
  Complex gamma;
};

using BlockSpectrum = std::vector<SectorRecord>;

// Exact decomposition of the transfer matrix. Conjugates P by the
// decomposition transform, verifies that the result is block diagonal and
// that each block matches the closed form, then returns the closed-form
// records. Failure of either check is an internal inconsistency, not a user
// error.
inline BlockSpectrum block_decompose(const NetworkSpec& spec) {
  const CMatrix p = transfer_matrix(spec);
  const CMatrix w = decomposition_transform(spec);
  const CMatrix d = w.adjoint() * p * w;

  double off_mass = 0.0;
  for (int r = 0; r < d.rows(); ++r)
    for (int c = 0; c < d.cols(); ++c)
      if (r / 2 != c / 2) off_mass += std::norm(d(r, c));
  off_mass = std::sqrt(off_mass);
  if (off_mass > 1e-8)
    throw numerical_error("block_decompose: conjugated matrix not block diagonal, off-block mass " +
                          std::to_string(off_mass));

  BlockSpectrum out;
  out.reserve(spec.N);
  for (int n = 0; n < spec.N; ++n) {
    const NodeMatrix k = sector_block(spec, n);
    const NodeMatrix extracted{d(2 * n, 2 * n), d(2 * n, 2 * n + 1), d(2 * n + 1, 2 * n), d(2 * n + 1, 2 * n + 1)};
    if (frobenius_norm(mat_sub(extracted, k)) > 1e-10)
      throw numerical_error("block_decompose: conjugated block " + std::to_string(n) +
                            " deviates from the closed form");
    out.push_back({n, k, acosh_principal(k.trace() / 2.0)});
  }
  return out;
}

}  // namespace qnet
