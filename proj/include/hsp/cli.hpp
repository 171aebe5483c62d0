#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hsp::cli {

enum class Mode { Params, Subgroups, Verify, Solve, Collide, Fidelity, Bench };
enum class Format { Json, Csv };

struct ExperimentConfig {
  Mode mode = Mode::Params;
  std::uint64_t p = 0, q = 0;
  unsigned r = 1, s = 1, t = 1;
  std::uint64_t l = 1;
  std::string hidden;  // "cyclic:i,j" or "twogen:i,a,j"
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  bool full_state = false;
  bool timing = false;  // timing_ms stays null otherwise, keeping reports reproducible
  unsigned threads = 1;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kVerificationFailed = 2;
inline constexpr int kSolverFailed = 3;
inline constexpr int kInternalError = 4;

std::string to_string(Mode mode);

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

/// Runs one experiment and writes the report to `out`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs. HSP_SEED supplies the seed when --seed is absent.
int run_command_line(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hsp::cli
