// Command-line front end: parse a run description (flags, optionally seeded
// from a JSON config file), execute it, and serialize the result as CSV or
// JSON. Output is deterministic byte for byte for identical configs: fixed
// field order, shortest round-trip decimals, '\n' line endings, no locale.

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnet/algebra.hpp"
#include "qnet/network.hpp"
#include "qnet/propagate.hpp"
#include "qnet/spectrum.hpp"

namespace qnet::cli {

struct cli_usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Command { spectrum, sweep, propagate, critical, regime };
enum class OutputFormat { csv, json };

struct InputDescriptor {
  enum class Kind { superposition, mode };
  Kind kind = Kind::superposition;
  int index = 0;  // phase index n for superposition, 1-based mode j otherwise
};

struct RunConfig {
  Command command = Command::critical;
  int N = 4;
  int M = 1;
  std::string theta = "ising";    // decimal, "ising" (derived from phi) or "critical"
  std::string phi = "critical";   // decimal or "critical"
  Regime regime = Regime::su11;
  double phi_lo = 0.3;
  double phi_hi = 1.6;
  int steps = 400;
  double fd_step = 1e-5;
  InputDescriptor input;
  OutputFormat format = OutputFormat::csv;
  std::string output_path;  // empty: standard output
};

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline double parse_double_value(const std::string& name, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw cli_usage_error("--" + name + ": expected a number, got '" + text + "'");
  return v;
}

inline int parse_int_value(const std::string& name, const std::string& text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw cli_usage_error("--" + name + ": expected an integer, got '" + text + "'");
  return v;
}

inline Command parse_command(const std::string& text) {
  if (text == "spectrum") return Command::spectrum;
  if (text == "sweep") return Command::sweep;
  if (text == "propagate") return Command::propagate;
  if (text == "critical") return Command::critical;
  if (text == "regime") return Command::regime;
  throw cli_usage_error("unknown command '" + text +
                        "' (expected spectrum, sweep, propagate, critical or regime)");
}

inline Regime parse_regime(const std::string& text) {
  if (text == "su11") return Regime::su11;
  if (text == "su2") return Regime::su2;
  throw cli_usage_error("--regime: expected su11 or su2, got '" + text + "'");
}

inline OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw cli_usage_error("--format: expected csv or json, got '" + text + "'");
}

inline InputDescriptor parse_input(const std::string& text) {
  if (text.rfind("superposition:n=", 0) == 0)
    return {InputDescriptor::Kind::superposition, parse_int_value("input", text.substr(16))};
  if (text.rfind("mode:j=", 0) == 0)
    return {InputDescriptor::Kind::mode, parse_int_value("input", text.substr(7))};
  throw cli_usage_error("--input: expected superposition:n=<int> or mode:j=<int>, got '" + text + "'");
}

inline const std::set<std::string>& allowed_keys(Command cmd) {
  static const std::set<std::string> common = {"format", "output", "config"};
  static const std::set<std::string> spec_keys = {"N", "M", "theta", "phi", "regime"};
  static const auto merge = [](std::set<std::string> base, const std::set<std::string>& extra) {
    base.insert(extra.begin(), extra.end());
    return base;
  };
  static const std::set<std::string> spectrum_keys = merge(common, spec_keys);
  static const std::set<std::string> sweep_keys = merge(common, {"phi-lo", "phi-hi", "steps", "fd-step"});
  static const std::set<std::string> propagate_keys = merge(merge(common, spec_keys), {"input"});
  static const std::set<std::string> critical_keys = merge(common, {"regime"});
  switch (cmd) {
    case Command::spectrum: return spectrum_keys;
    case Command::sweep: return sweep_keys;
    case Command::propagate: return propagate_keys;
    case Command::critical: return critical_keys;
    case Command::regime: return spectrum_keys;
  }
  return spectrum_keys;
}

}  // namespace detail

// Resolve the angle tokens and build the validated network description.
// Spec-level invariant violations surface as usage errors with the violated
// constraint in the message.
inline NetworkSpec make_spec(const RunConfig& config) {
  try {
    const double phi_c = critical_point(config.regime).phi_c;
    const double phi = config.phi == "critical" ? phi_c : detail::parse_double_value("phi", config.phi);
    if (config.theta == "ising") {
      if (config.regime != Regime::su11)
        throw cli_usage_error("--theta ising: the coupling constraint exists only for --regime su11");
      return NetworkSpec::ising(config.N, config.M, phi);
    }
    const double theta =
        config.theta == "critical" ? phi_c : detail::parse_double_value("theta", config.theta);
    return config.regime == Regime::su11 ? NetworkSpec::su11(config.N, config.M, theta, phi)
                                         : NetworkSpec::su2(config.N, config.M, theta, phi);
  } catch (const cli_usage_error&) {
    throw;
  } catch (const std::exception& e) {
    throw cli_usage_error(e.what());
  }
}

inline RunConfig parse_args(const std::vector<std::string>& args) {
  if (args.empty()) throw cli_usage_error("missing command");
  RunConfig config;
  config.command = detail::parse_command(args[0]);
  const auto& allowed = detail::allowed_keys(config.command);

  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& token = args[i];
    if (token.rfind("--", 0) != 0) throw cli_usage_error("expected a --flag, got '" + token + "'");
    const std::string name = token.substr(2);
    if (!allowed.count(name)) throw cli_usage_error("unknown flag --" + name + " for this command");
    if (i + 1 >= args.size()) throw cli_usage_error("--" + name + ": missing value");
    if (kv.count(name)) throw cli_usage_error("--" + name + " given twice");
    kv[name] = args[++i];
  }

  // Config file values fill in whatever the flags left unset.
  if (kv.count("config")) {
    std::ifstream in(kv["config"]);
    if (!in) throw cli_usage_error("--config: cannot open '" + kv["config"] + "'");
    nlohmann::json file;
    try {
      in >> file;
    } catch (const std::exception& e) {
      throw cli_usage_error(std::string("--config: invalid JSON: ") + e.what());
    }
    if (!file.is_object()) throw cli_usage_error("--config: top level must be an object");
    for (const auto& [key, value] : file.items()) {
      if (!allowed.count(key) || key == "config")
        throw cli_usage_error("--config: unknown field '" + key + "' for this command");
      if (kv.count(key)) continue;
      if (value.is_string())
        kv[key] = value.get<std::string>();
      else if (value.is_number())
        kv[key] = value.dump();
      else
        throw cli_usage_error("--config: field '" + key + "' must be a string or number");
    }
  }

  for (const auto& [name, text] : kv) {
    if (name == "N") config.N = detail::parse_int_value(name, text);
    else if (name == "M") config.M = detail::parse_int_value(name, text);
    else if (name == "theta") config.theta = text;
    else if (name == "phi") config.phi = text;
    else if (name == "regime") config.regime = detail::parse_regime(text);
    else if (name == "phi-lo") config.phi_lo = detail::parse_double_value(name, text);
    else if (name == "phi-hi") config.phi_hi = detail::parse_double_value(name, text);
    else if (name == "steps") config.steps = detail::parse_int_value(name, text);
    else if (name == "fd-step") config.fd_step = detail::parse_double_value(name, text);
    else if (name == "input") config.input = detail::parse_input(text);
    else if (name == "format") config.format = detail::parse_format(text);
    else if (name == "output") config.output_path = text;
  }

  switch (config.command) {
    case Command::spectrum:
    case Command::regime:
      make_spec(config);
      break;
    case Command::propagate: {
      const NetworkSpec spec = make_spec(config);
      if (config.input.kind == InputDescriptor::Kind::superposition) {
        if (config.input.index < 0 || config.input.index >= spec.N)
          throw cli_usage_error("--input superposition:n must satisfy 0 <= n < N");
      } else if (config.input.index < 1 || config.input.index > 2 * spec.N) {
        throw cli_usage_error("--input mode:j must satisfy 1 <= j <= 2N");
      }
      break;
    }
    case Command::sweep:
      if (!(config.phi_lo > 0.0 && config.phi_lo < config.phi_hi))
        throw cli_usage_error("sweep needs 0 < --phi-lo < --phi-hi");
      if (config.steps < 2) throw cli_usage_error("--steps must be at least 2");
      if (!(config.fd_step > 0.0 && config.fd_step < config.phi_lo))
        throw cli_usage_error("--fd-step must satisfy 0 < fd-step < phi-lo");
      break;
    case Command::critical:
      break;
  }
  return config;
}

namespace detail {

inline nlohmann::ordered_json spec_json(const NetworkSpec& spec) {
  return {{"N", spec.N},
          {"M", spec.M},
          {"regime", qnet::to_string(spec.regime)},
          {"theta", spec.theta.axis()},
          {"phi", spec.phi.axis()},
          {"ising_constrained", spec.ising_constrained}};
}

inline void emit(std::ostream& out, const nlohmann::ordered_json& doc) { out << doc.dump(2) << "\n"; }

inline void run_spectrum(const RunConfig& config, std::ostream& out) {
  const NetworkSpec spec = make_spec(config);
  if (config.format == OutputFormat::csv) {
    out << "n,gamma_re,gamma_im,multiplier_abs\n";
    for (int n = 0; n < spec.N; ++n) {
      const Complex g = sector_exponent(spec, n);
      out << n << ',' << format_double(g.real()) << ',' << format_double(g.imag()) << ','
          << format_double(std::exp(g.real())) << "\n";
    }
    return;
  }
  nlohmann::ordered_json doc{{"schema", 1}, {"command", "spectrum"}, {"spec", spec_json(spec)}};
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (int n = 0; n < spec.N; ++n) {
    const Complex g = sector_exponent(spec, n);
    rows.push_back({{"n", n},
                    {"gamma_re", g.real()},
                    {"gamma_im", g.imag()},
                    {"multiplier_abs", std::exp(g.real())}});
  }
  emit(out, doc);
}

inline void run_sweep(const RunConfig& config, std::ostream& out) {
  const auto rows = sweep_gamma0(config.phi_lo, config.phi_hi, config.steps, config.fd_step);
  const KinkReport kink = locate_kink(rows);
  // Both single-node gains are reported: they differ away from the transition
  // (cosh^2 phi vs coth^2 phi) and meet at 2 exactly there.
  const auto gain_theta = [](double phi) { return 1.0 / (std::tanh(phi) * std::tanh(phi)); };
  if (config.format == OutputFormat::csv) {
    out << "phi,gamma0,dleft,dright,gain_phi,gain_theta,label\n";
    for (const SweepRow& r : rows)
      out << format_double(r.phi) << ',' << format_double(r.gamma0) << ',' << format_double(r.dleft)
          << ',' << format_double(r.dright) << ',' << format_double(r.gain) << ','
          << format_double(gain_theta(r.phi)) << ',' << qnet::to_string(r.label) << "\n";
    out << "# kink_phi=" << format_double(kink.phi) << " kink_jump=" << format_double(kink.jump) << "\n";
    return;
  }
  nlohmann::ordered_json doc{{"schema", 1},
                             {"command", "sweep"},
                             {"params",
                              {{"phi_lo", config.phi_lo},
                               {"phi_hi", config.phi_hi},
                               {"steps", config.steps},
                               {"fd_step", config.fd_step}}}};
  auto& jrows = doc["rows"] = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows)
    jrows.push_back({{"phi", r.phi},
                     {"gamma0", r.gamma0},
                     {"dleft", r.dleft},
                     {"dright", r.dright},
                     {"gain_phi", r.gain},
                     {"gain_theta", gain_theta(r.phi)},
                     {"label", qnet::to_string(r.label)}});
  doc["kink"] = {{"phi", kink.phi}, {"jump", kink.jump}};
  emit(out, doc);
}

inline void run_propagate(const RunConfig& config, std::ostream& out) {
  const NetworkSpec spec = make_spec(config);
  const ModeVector in = config.input.kind == InputDescriptor::Kind::superposition
                            ? superposition_input(spec.N, config.input.index)
                            : single_mode_input(spec.N, config.input.index);
  const ModeVector result = propagate(in, spec);
  if (config.format == OutputFormat::csv) {
    out << "mode,amp_re,amp_im,intensity\n";
    for (std::size_t i = 0; i < result.size(); ++i)
      out << (i + 1) << ',' << format_double(result[i].real()) << ','
          << format_double(result[i].imag()) << ',' << format_double(std::norm(result[i])) << "\n";
    return;
  }
  nlohmann::ordered_json doc{{"schema", 1}, {"command", "propagate"}, {"spec", spec_json(spec)}};
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.size(); ++i)
    rows.push_back({{"mode", i + 1},
                    {"amp_re", result[i].real()},
                    {"amp_im", result[i].imag()},
                    {"intensity", std::norm(result[i])}});
  emit(out, doc);
}

inline void run_critical(const RunConfig& config, std::ostream& out) {
  const CriticalPoint cp = critical_point(config.regime);
  if (config.format == OutputFormat::csv) {
    if (config.regime == Regime::su11) {
      out << "regime,phi_c,G_c,kTc_over_eps\n"
          << "su11," << format_double(cp.phi_c) << ',' << format_double(cp.gain_or_transmittance)
          << ',' << format_double(*cp.kTc_over_eps) << "\n";
    } else {
      out << "regime,phi_prime_c,t_c\n"
          << "su2," << format_double(cp.phi_c) << ',' << format_double(cp.gain_or_transmittance) << "\n";
    }
    return;
  }
  nlohmann::ordered_json doc{{"schema", 1}, {"command", "critical"}, {"regime", qnet::to_string(cp.regime)}};
  if (config.regime == Regime::su11) {
    doc["phi_c"] = cp.phi_c;
    doc["G_c"] = cp.gain_or_transmittance;
    doc["kTc_over_eps"] = *cp.kTc_over_eps;
  } else {
    doc["phi_prime_c"] = cp.phi_c;
    doc["t_c"] = cp.gain_or_transmittance;
  }
  emit(out, doc);
}

inline void run_regime(const RunConfig& config, std::ostream& out) {
  const NetworkSpec spec = make_spec(config);
  const RegimeLabel label = regime_classify(spec);
  if (config.format == OutputFormat::csv) {
    out << "label\n" << qnet::to_string(label) << "\n";
    return;
  }
  emit(out, nlohmann::ordered_json{
                {"schema", 1}, {"command", "regime"}, {"label", qnet::to_string(label)}});
}

}  // namespace detail

// Execute a validated config, writing data to `out` (diagnostics belong on
// the caller's error stream). Returns the process exit status.
inline int run(const RunConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::spectrum: detail::run_spectrum(config, out); break;
    case Command::sweep: detail::run_sweep(config, out); break;
    case Command::propagate: detail::run_propagate(config, out); break;
    case Command::critical: detail::run_critical(config, out); break;
    case Command::regime: detail::run_regime(config, out); break;
  }
  return 0;
}

}  // namespace qnet::cli
