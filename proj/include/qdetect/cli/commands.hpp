#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "qdetect/cli/json_io.hpp"
#include "qdetect/lsm.hpp"
#include "qdetect/sdp.hpp"

namespace qdetect::cli {

enum ExitCode : int { kExitOk = 0, kExitNotOptimal = 1, kExitInput = 2, kExitNumerical = 3 };

inline constexpr double kDefaultVerifyTol = 1e-6;

struct LsmOptions {
  std::filesystem::path input;
  bool pretty = false;
  double cond_tol = kDefaultConditionTol;
  double verify_tol = kDefaultVerifyTol;
  std::optional<std::filesystem::path> emit_povm;
  /// Writes alpha W^{1/2} whether or not the condition holds.
  std::optional<std::filesystem::path> emit_cert;
};

enum class Reduction { Auto, Full, Gu, Cgu };

struct OptimalOptions {
  std::filesystem::path input;
  bool pretty = false;
  Reduction reduction = Reduction::Auto;
  SolverOptions solver;
  double verify_tol = kDefaultVerifyTol;
  std::optional<std::filesystem::path> emit_povm;
  std::optional<std::filesystem::path> emit_cert;
};

struct VerifyOptions {
  std::filesystem::path input;
  std::filesystem::path povm;
  std::filesystem::path cert;
  bool pretty = false;
  double tol = kDefaultVerifyTol;
};

struct ValidateOptions {
  std::filesystem::path input;
  bool pretty = false;
};

/// Each command writes its report to `out` and diagnostics to `err`, and
/// returns the process exit code.
int cmd_lsm(const LsmOptions& opts, std::ostream& out, std::ostream& err);
int cmd_optimal(const OptimalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

/// JSON with two-space indentation, or an indented text listing with
/// matrices laid out row by row when `pretty`.
void print_report(const Json& report, bool pretty, std::ostream& out);

Json verification_json(const OptimalityVerification& v, double tol);

/// Reads QDETECT_LOG (error, warn, info, debug) and routes logging to stderr.
void configure_logging();

}  // namespace qdetect::cli
