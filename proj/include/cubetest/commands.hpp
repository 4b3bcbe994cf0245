#pragma once

// The subcommands behind the cubetest executable. Each writes a flat
// `key value` report (or a file) and returns the process exit code.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cubetest {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string command;
  int n = 10;
  int d = 1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  double noise = 0.0;
  std::string in;
  std::string out;
  bool exact = false;
  std::string kind = "coboundary";  ///< gen: coboundary, cocycle, noisy, random
  std::uint64_t budget = 0;         ///< 0 means 64 n^2
  std::string mode = "auto";        ///< expansion: auto, exact, probe
  std::vector<double> grid;         ///< bench noise rates
  int theta = 1;
  int pi = 1;
  bool force = false;  ///< cohomology below the known range
};

int cmd_gen(const RunConfig& cfg, std::ostream& report);
int cmd_test(const RunConfig& cfg, std::ostream& report);
int cmd_decode(const RunConfig& cfg, std::ostream& report);
int cmd_cohomology(const RunConfig& cfg, std::ostream& report);
int cmd_expansion(const RunConfig& cfg, std::ostream& report);
int cmd_bench(const RunConfig& cfg, std::ostream& report);

/// Dispatches on cfg.command; library errors become exit code 2 with a
/// message on `err`.
int run_command(const RunConfig& cfg, std::ostream& report, std::ostream& err);

}  // namespace cubetest
