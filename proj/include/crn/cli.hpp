#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace crn::cli {

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string format = "text";  // text | json
  double t_end = 100.0;
  double tol = 1e-8;
  std::vector<double> x0;  // empty: seeded log-uniform sample
  unsigned seed = 0;
  int max_species = 20;
  int max_complexes = 10;
  bool exhaustive_decomposition = false;
  std::string output_prefix;  // simulate artifacts; default from input path
};

// Exit code contract: 0 success/stable, 1 inconclusive, 2 input error,
// 3 unsupported scale, 4 not complex balanced, 5 numerical failure.
inline constexpr int kExitStable = 0;
inline constexpr int kExitInconclusive = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitScale = 3;
inline constexpr int kExitNotComplexBalanced = 4;
inline constexpr int kExitNumerical = 5;

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace crn::cli
