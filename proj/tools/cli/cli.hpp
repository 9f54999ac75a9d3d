#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan::cli {

enum class Command { validate, spectrum, trotter, functional };

struct GridSpec {
  std::uint64_t min = 16;
  std::uint64_t max = 4096;
  std::uint64_t ratio = 2;
};

struct ExperimentConfig {
  Command command = Command::validate;
  std::string algebra;
  std::optional<std::string> formula;
  GridSpec grid;
  std::uint64_t seed = 0;
  int samples = 20;
  std::vector<std::string> element;
  std::string functional;
  std::optional<std::string> out_path;
  std::map<std::string, double> tolerances;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Parses "MIN:MAX:RATIO". Throws ParseError.
GridSpec parse_grid(const std::string& text);

/// Coefficients given as interleaved real,imag tokens. Each token may itself
/// be a complex literal ("2i", "1.5-3i"). A single "@path" token reads the
/// tokens from a file (separated by commas or whitespace). Throws ParseError.
Vector parse_coefficients(const std::vector<std::string>& tokens);

/// Runs one experiment; diagnostics go to `err`.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Command-line entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jordan::cli
