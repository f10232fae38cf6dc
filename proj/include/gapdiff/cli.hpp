#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gapdiff::cli {

struct CommandConfig {
  std::string subcommand;  ///< spectrum | levy | exponent | oracle | simulate | refine
  std::string input;
  std::string output;   ///< empty means standard output
  std::string summary;  ///< side JSON (levy, simulate, refine); empty means standard error
  double zmin = 1.0, zmax = 100.0;
  std::size_t zn = 41;
  double ymin = 0.01, ymax = 0.5;
  std::size_t yn = 41;
  std::string spacing = "log";
  std::optional<std::uint64_t> seed;
  std::size_t replicas = 10000;
  double budget = 1.0;
  std::vector<std::size_t> sizes{25, 50, 100, 200};
  std::optional<double> cutoff;
  std::string convention = "chain";
  unsigned threads = 1;
};

/// Runs one subcommand. Returns 0 on success; on failure writes a one-line
/// diagnostic to `err` and returns nonzero.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs the selected subcommand.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gapdiff::cli
