#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qnet/cli.hpp"

namespace {

void print_usage(std::ostream& out) {
  out << "qnet -- transfer-matrix simulator for nearest-neighbour quantum networks\n"
         "\n"
         "usage: qnet <command> [--flag value ...]\n"
         "\n"
         "commands:\n"
         "  spectrum    per-sector exponents gamma_n of one network\n"
         "  sweep       gamma_0 over a phi grid with one-sided slopes and kink summary\n"
         "  propagate   push an input state through M periods\n"
         "  critical    critical constants of a regime\n"
         "  regime      classify a network (quantum/classical or diabatic/adiabatic)\n"
         "\n"
         "common flags:\n"
         "  --N <int> --M <int> --theta <x|ising|critical> --phi <x|critical>\n"
         "  --regime <su11|su2> --format <csv|json> --output <path> --config <json file>\n"
         "sweep flags:\n"
         "  --phi-lo <x> --phi-hi <x> --steps <int> --fd-step <x>\n"
         "propagate flag:\n"
         "  --input <superposition:n=K | mode:j=J>\n"
         "\n"
         "For su2 networks, angle values are the primed real parameters (theta', phi').\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    print_usage(args.empty() ? std::cerr : std::cout);
    return args.empty() ? 2 : 0;
  }
  try {
    const qnet::cli::RunConfig config = qnet::cli::parse_args(args);
    if (!config.output_path.empty()) {
      std::ofstream file(config.output_path);
      if (!file) {
        std::cerr << "error: cannot open output file '" << config.output_path << "'\n";
        return 1;
      }
      return qnet::cli::run(config, file);
    }
    return qnet::cli::run(config, std::cout);
  } catch (const qnet::cli::cli_usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n(run 'qnet --help' for the flag list)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
