// Acceptance suite: every gate criterion evaluated at its pinned tolerance,
// one PASS/FAIL line each. Exit status is the number of failed criteria.
// Tolerances on growing (su11) amplitude comparisons are relative to the
// larger vector's peak magnitude; everything else is absolute as printed.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qnet/cli.hpp"
#include "qnet/oracle.hpp"
#include "qnet/propagate.hpp"
#include "qnet/spectrum.hpp"

using namespace qnet;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& text) {
  std::printf("[%s] %2d %s\n", ok ? "PASS" : "FAIL", id, text.c_str());
  if (!ok) ++failures;
}

const double kPhiC = std::acosh(std::sqrt(2.0));

// Pinned by the fine-grid finite-difference oracle (slopes -2 and +2; see the
// sweep tests): the one-sided slope jump of gamma_0 at the transition.
const double kExpectedKinkJump = 4.0;

std::vector<NetworkSpec> standard_spec_set() {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> amp(0.2, 1.3);
  std::vector<NetworkSpec> specs;
  for (int n_pairs = 2; n_pairs <= 8; ++n_pairs) {
    for (int i = 0; i < 20; ++i) {
      specs.push_back(NetworkSpec::su11(n_pairs, 1, amp(rng), amp(rng)));
      specs.push_back(NetworkSpec::ising(n_pairs, 1, amp(rng)));
      specs.push_back(NetworkSpec::su2(n_pairs, 1, amp(rng), amp(rng)));
    }
  }
  return specs;
}

ModeVector random_state(int dim, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModeVector v(dim);
  for (Complex& z : v) z = {u(rng), u(rng)};
  return v;
}

double relative_deviation(const ModeVector& a, const ModeVector& b) {
  double scale = 1.0, worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst / scale;
}

void criterion_1_critical_constants() {
  const CriticalPoint cp = critical_point(Regime::su11);
  const double ktc_err = std::abs(*cp.kTc_over_eps - 2.269);
  const double roundtrip = std::abs(std::cosh(cp.phi_c) * std::cosh(cp.phi_c) - 2.0);
  const bool ok = cp.gain_or_transmittance == 2.0 && roundtrip < 1e-14 && ktc_err <= 1e-3;
  std::ostringstream line;
  line << "critical constants: G_c = 2 exactly, kTc/eps = " << *cp.kTc_over_eps
       << " (|err| = " << ktc_err << " <= 1e-3)";
  report(1, ok, line.str());
}

void criterion_2_zero_mode() {
  const NetworkSpec spec = NetworkSpec::ising(8, 1, kPhiC);
  const double closed = std::abs(sector_exponent(spec, 0));
  const double integral = std::abs(sector_exponent_integral(spec, 0, 4096));
  std::ostringstream line;
  line << "zero mode at criticality: closed form " << closed << " <= 1e-10, integral (2^12 panels) "
       << integral << " <= 1e-4";
  report(2, closed <= 1e-10 && integral <= 1e-4, line.str());
}

void criterion_3_kink() {
  const auto rows = sweep_gamma0(0.3, 1.6, 400, 1e-5);
  const KinkReport kink = locate_kink(rows);
  const double spacing = (1.6 - 0.3) / 399.0;
  double background = 0.0;
  for (const SweepRow& r : rows)
    if (std::abs(r.phi - kPhiC) > 0.1)
      background = std::max(background, std::abs(r.dright - r.dleft));
  const bool ok = std::abs(kink.phi - kPhiC) <= 2.0 * spacing &&
                  kink.jump > kKinkProminenceRatio * background &&
                  std::abs(kink.jump - kExpectedKinkJump) <= 1e-3;
  std::ostringstream line;
  line << "kink detection: located at phi = " << kink.phi << " (|err| <= 2 spacings), jump "
       << kink.jump << " vs background " << background << " (> 10x), regression value 4 +- 1e-3";
  report(3, ok, line.str());
}

void criterion_4_oracle_spectra() {
  double worst = 0.0;
  bool ok = true;
  for (const NetworkSpec& spec : standard_spec_set()) {
    oracle::EigenMultiset closed;
    for (int n = 0; n < spec.N; ++n) {
      const Complex g = sector_exponent(spec, n);
      closed.push_back(std::exp(g));
      closed.push_back(std::exp(-g));
    }
    const auto rep =
        oracle::compare_multisets(oracle::dense_eigenvalues(transfer_matrix(spec)), closed, 1e-8);
    worst = std::max(worst, rep.max_distance);
    ok = ok && rep.pass;
  }
  std::ostringstream line;
  line << "oracle spectral equivalence (N = 2..8, 20 specs per regime): worst multiset distance "
       << worst << " <= 1e-8";
  report(4, ok, line.str());
}

void criterion_5_reconstruction() {
  double worst = 0.0;
  for (const NetworkSpec& spec : standard_spec_set()) {
    const CMatrix w = decomposition_transform(spec);
    CMatrix bd = CMatrix::Zero(spec.modes(), spec.modes());
    for (const SectorRecord& rec : block_decompose(spec)) {
      bd(2 * rec.n, 2 * rec.n) = rec.block.m11;
      bd(2 * rec.n, 2 * rec.n + 1) = rec.block.m12;
      bd(2 * rec.n + 1, 2 * rec.n) = rec.block.m21;
      bd(2 * rec.n + 1, 2 * rec.n + 1) = rec.block.m22;
    }
    worst = std::max(worst, (w * bd * w.adjoint() - transfer_matrix(spec)).cwiseAbs().maxCoeff());
  }
  std::ostringstream line;
  line << "decomposition reconstruction: worst elementwise deviation " << worst << " <= 1e-10";
  report(5, worst <= 1e-10, line.str());
}

void criterion_6_propagation() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> amp(0.1, 0.6);
  double worst = 0.0;
  for (int n_pairs : {2, 4, 6, 8}) {
    for (int m : {1, 2, 7, 64}) {
      const NetworkSpec specs[] = {NetworkSpec::su11(n_pairs, m, amp(rng), amp(rng)),
                                   NetworkSpec::ising(n_pairs, m, amp(rng) + 0.4),
                                   NetworkSpec::su2(n_pairs, m, amp(rng), amp(rng))};
      for (const NetworkSpec& spec : specs) {
        const ModeVector in = random_state(spec.modes(), rng);
        const CMatrix pm = oracle::dense_power(transfer_matrix(spec), m);
        ModeVector dense(spec.modes(), Complex{0.0, 0.0});
        for (int r = 0; r < pm.rows(); ++r)
          for (int c = 0; c < pm.cols(); ++c) dense[r] += pm(r, c) * in[c];
        worst = std::max(worst, relative_deviation(propagate(in, spec), dense));
      }
    }
  }
  std::ostringstream line;
  line << "propagation equivalence (M in {1,2,7,64}): worst relative deviation " << worst
       << " <= 1e-8";
  report(6, worst <= 1e-8, line.str());
}

void criterion_7_transparency() {
  double worst = 0.0;
  for (int m : {1, 16, 64}) {
    const NetworkSpec spec = NetworkSpec::ising(6, m, kPhiC);
    const ModeVector in = superposition_input(6, 0);
    worst = std::max(worst, relative_deviation(propagate(in, spec), in));
  }
  std::ostringstream line;
  line << "transparency at the critical point (M in {1,16,64}): worst deviation " << worst
       << " <= 1e-8";
  report(7, worst <= 1e-8, line.str());
}

void criterion_8_su2_criticality() {
  const double quarter = std::numbers::pi / 4.0;
  const double g0 = su2_gamma0(quarter);
  const CriticalPoint cp = critical_point(Regime::su2);
  const bool labels_flip =
      regime_classify(NetworkSpec::su2(4, 1, quarter, quarter - 1e-3)) == RegimeLabel::diabatic &&
      regime_classify(NetworkSpec::su2(4, 1, quarter, quarter + 1e-3)) == RegimeLabel::adiabatic &&
      regime_classify(NetworkSpec::su2(4, 1, quarter, quarter)) == RegimeLabel::critical;
  const bool ok = g0 <= 1e-12 && cp.gain_or_transmittance == 0.5 && labels_flip;
  std::ostringstream line;
  line << "su2 criticality: gamma_0(pi/4) = " << g0 << " <= 1e-12, t_c = 0.5, labels flip "
       << "diabatic->critical->adiabatic across pi/4";
  report(8, ok, line.str());
}

void criterion_9_conservation() {
  std::mt19937 rng(7);
  const NetworkSpec passive = NetworkSpec::su2(5, 16, 0.7, 1.1);
  const ModeVector pin = random_state(10, rng);
  const double norm_err = std::abs(squared_norm(propagate(pin, passive)) - squared_norm(pin));

  const NetworkSpec active = NetworkSpec::su11(5, 4, 0.5, 0.45);
  const ModeVector ain = random_state(10, rng);
  const double form_err =
      std::abs(indefinite_form_value(propagate(ain, active)) - indefinite_form_value(ain));

  double det_err = 0.0;
  std::uniform_real_distribution<double> amp(0.2, 1.3);
  for (int i = 0; i < 50; ++i) {
    det_err = std::max(det_err,
                       std::abs(node_matrix(Rapidity::su11(amp(rng))).det() - Complex{1.0, 0.0}));
    det_err = std::max(det_err,
                       std::abs(node_matrix(Rapidity::su2(amp(rng))).det() - Complex{1.0, 0.0}));
    const NetworkSpec spec = NetworkSpec::ising(6, 1, amp(rng));
    for (int n = 0; n < spec.N; ++n)
      det_err = std::max(det_err, std::abs(sector_block(spec, n).det() - Complex{1.0, 0.0}));
  }
  const bool ok = norm_err <= 1e-10 && form_err <= 1e-9 && det_err <= 1e-10;
  std::ostringstream line;
  line << "conservation: su2 norm drift " << norm_err << " <= 1e-10, su11 form drift " << form_err
       << " <= 1e-9, worst |det - 1| " << det_err << " <= 1e-10";
  report(9, ok, line.str());
}

void criterion_10_phase_sensitivity() {
  bool decreasing = true;
  double prev = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double phi = 0.2 + (3.0 - 0.2) * i / 29.0;
    const double s = phase_sensitivity(NetworkSpec::ising(8, 1, phi));
    if (i > 0 && !(s < prev)) decreasing = false;
    prev = s;
  }
  const double edge = std::asinh(1.0);
  const bool boundary =
      regime_classify(NetworkSpec::ising(4, 1, edge)) == RegimeLabel::critical &&
      regime_classify(NetworkSpec::ising(4, 1, edge - 1e-6)) == RegimeLabel::quantum &&
      regime_classify(NetworkSpec::ising(4, 1, edge + 1e-6)) == RegimeLabel::classical;
  std::ostringstream line;
  line << "phase sensitivity strictly decreasing on 30-point grid [0.2, 3.0]; "
       << "classification boundary at sinh(phi) = 1";
  report(10, decreasing && boundary, line.str());
}

void criterion_11_single_mode_sum() {
  double worst = 0.0;
  for (int n_pairs : {3, 4, 8}) {
    for (int m : {1, 5, 20}) {
      for (double phi : {0.7, kPhiC, 1.1}) {
        const NetworkSpec spec = NetworkSpec::ising(n_pairs, m, phi);
        for (int n = 0; n < n_pairs; ++n) {
          const Complex sum = single_mode_output_amplitude(spec, n);
          const ModeVector out = propagate(single_mode_input(n_pairs, 2 * n + 1), spec);
          worst = std::max(worst, std::abs(sum - out[2 * n]) / std::max(1.0, std::abs(sum)));
        }
      }
    }
  }
  std::ostringstream line;
  line << "single-mode return amplitude: sector sum vs propagation, worst relative deviation "
       << worst << " <= 1e-10 (critical point included)";
  report(11, worst <= 1e-10, line.str());
}

void criterion_12_cli_determinism() {
  const std::vector<std::vector<std::string>> cases = {
      {"spectrum", "--N", "8", "--phi", "1.0", "--theta", "ising", "--format", "csv"},
      {"spectrum", "--N", "8", "--phi", "1.0", "--theta", "ising", "--format", "json"},
      {"sweep", "--steps", "60", "--format", "csv"},
      {"sweep", "--steps", "60", "--format", "json"},
      {"propagate", "--N", "4", "--M", "16", "--phi", "critical", "--theta", "ising", "--input",
       "superposition:n=0", "--format", "json"},
      {"critical", "--regime", "su11", "--format", "json"},
      {"regime", "--phi", "0.5", "--theta", "ising", "--format", "csv"},
  };
  bool ok = true;
  for (const auto& args : cases) {
    const cli::RunConfig config = cli::parse_args(args);
    std::ostringstream first, second;
    ok = ok && cli::run(config, first) == 0 && cli::run(config, second) == 0 &&
         first.str() == second.str() && !first.str().empty();
  }
  std::ostringstream line;
  line << "cli determinism: " << cases.size() << " configs, both formats, byte-identical reruns";
  report(12, ok, line.str());
}

}  // namespace

int main() {
  criterion_1_critical_constants();
  criterion_2_zero_mode();
  criterion_3_kink();
  criterion_4_oracle_spectra();
  criterion_5_reconstruction();
  criterion_6_propagation();
  criterion_7_transparency();
  criterion_8_su2_criticality();
  criterion_9_conservation();
  criterion_10_phase_sensitivity();
  criterion_11_single_mode_sum();
  criterion_12_cli_determinism();
  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
