// Scalar and 2x2 building blocks for quantum-network transfer matrices:
// complex hyperbolic functions, tagged coupling angles, unit-determinant
// node transformations and the coupling constraint that ties the two node
// angles of an amplifier column to each other.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qnet {

using Complex = std::complex<double>;

// Real coupling angles give SU(1,1) nodes (active, amplifying); imaginary
// angles give SU(2) nodes (passive, beam-splitting).
enum class Regime { su11, su2 };

inline const char* to_string(Regime r) { return r == Regime::su11 ? "su11" : "su2"; }

// Allowed leakage off the regime axis of a tagged angle.
inline constexpr double kAxisTol = 1e-12;

// Unit-determinant checks on node and sector blocks.
inline constexpr double kDetTol = 1e-10;

// Raised when an iterative numeric routine fails to deliver a trustworthy
// result (eigensolver breakdown, residual too large, ...).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// cosh/sinh of a complex argument assembled from real transcendentals:
// cosh(x+iy) = cosh x cos y + i sinh x sin y, and likewise for sinh.
inline Complex cosh_c(Complex z) {
  return {std::cosh(z.real()) * std::cos(z.imag()), std::sinh(z.real()) * std::sin(z.imag())};
}

inline Complex sinh_c(Complex z) {
  return {std::sinh(z.real()) * std::cos(z.imag()), std::cosh(z.real()) * std::sin(z.imag())};
}

// Principal inverse cosh, log(z + sqrt(z-1) sqrt(z+1)) with both square roots
// on their principal branches. Re >= 0 on the whole plane; for real z in
// [-1, 1] the result is purely imaginary with Im in [0, pi]. Arguments within
// kUnitClamp of 1 collapse to exactly zero: forming z costs a cancellation of
// order sqrt(eps) right at the transition, and the clamp keeps the zero
// exponent exact there.
inline constexpr double kUnitClamp = 1e-12;

inline Complex acosh_principal(Complex z) {
  if (std::abs(z - Complex{1.0, 0.0}) <= kUnitClamp) return {0.0, 0.0};
  return std::log(z + std::sqrt(z - Complex{1.0, 0.0}) * std::sqrt(z + Complex{1.0, 0.0}));
}

// Coupling angle tagged with its regime. The tag is explicit so that a real
// angle picking up imaginary contamination (or vice versa) is an error rather
// than a silent switch of the node type.
class Rapidity {
 public:
  Rapidity(Complex value, Regime regime) : value_(value), regime_(regime) {
    if (!is_finite(value)) throw std::domain_error("rapidity: non-finite value");
    const double off = regime == Regime::su11 ? std::abs(value.imag()) : std::abs(value.real());
    if (off > kAxisTol)
      throw std::domain_error(std::string("rapidity: value off the ") +
                              (regime == Regime::su11 ? "real" : "imaginary") +
                              " axis for its regime tag");
  }

  static Rapidity su11(double x) { return {{x, 0.0}, Regime::su11}; }
  // su2(y) is the angle i*y.
  static Rapidity su2(double y) { return {{0.0, y}, Regime::su2}; }

  Complex value() const { return value_; }
  Regime regime() const { return regime_; }
  // Coordinate along the regime axis: x for an angle x, y for an angle i*y.
  double axis() const { return regime_ == Regime::su11 ? value_.real() : value_.imag(); }

 private:
  Complex value_;
  Regime regime_;
};

// 2x2 complex matrix; every one handled here has unit determinant (node
// transformations and the per-sector blocks assembled from them).
struct NodeMatrix {
  Complex m11, m12, m21, m22;

  static NodeMatrix identity() { return {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}}; }

  Complex det() const { return m11 * m22 - m12 * m21; }
  Complex trace() const { return m11 + m22; }
};

inline NodeMatrix mat_mul(const NodeMatrix& a, const NodeMatrix& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

inline std::pair<Complex, Complex> mat_apply(const NodeMatrix& a, const std::pair<Complex, Complex>& v) {
  return {a.m11 * v.first + a.m12 * v.second, a.m21 * v.first + a.m22 * v.second};
}

inline NodeMatrix mat_sub(const NodeMatrix& a, const NodeMatrix& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

inline double frobenius_norm(const NodeMatrix& a) {
  return std::sqrt(std::norm(a.m11) + std::norm(a.m12) + std::norm(a.m21) + std::norm(a.m22));
}

// Transformation performed at a single node with coupling angle a:
//
//   [  cosh a   i sinh a ]
//   [ -i sinh a   cosh a ]
//
// Real a: two-mode squeezer (real diagonal, imaginary off-diagonal). For
// a = i*y the same expression collapses to the real rotation by y. The
// determinant is cosh^2 - sinh^2 = 1 either way.
inline NodeMatrix node_matrix(const Rapidity& angle) {
  const Complex c = cosh_c(angle.value());
  const Complex s = sinh_c(angle.value());
  if (!is_finite(c) || !is_finite(s)) throw std::domain_error("node_matrix: angle overflows cosh/sinh");
  const Complex i{0.0, 1.0};
  return {c, i * s, -i * s, c};
}

// Companion angle theta solving coth(theta) = cosh(phi) for real phi > 0,
// evaluated as artanh(1/cosh phi) = log((1+x)/(1-x))/2 with x in (0, 1),
// written in log1p form so theta keeps full relative precision when phi is
// large and x ~ 2 e^{-phi} is tiny. This is the constraint tying the two
// couplings of one amplifier column; it has no single-valued counterpart for
// splitter networks.
inline Rapidity ising_partner_theta(const Rapidity& phi) {
  if (phi.regime() != Regime::su11 || !(phi.axis() > 0.0))
    throw std::domain_error("ising_partner_theta: constraint defined only for real phi > 0");
  const double x = 1.0 / std::cosh(phi.axis());
  return Rapidity::su11(0.5 * std::log1p(2.0 * x / (1.0 - x)));
}

}  // namespace qnet
