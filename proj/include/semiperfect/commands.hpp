#pragma once

// CLI verbs as library functions, so tests can run them in-process. Every
// verb returns an exit code: 0 success, 1 failed claim (report still written),
// 2 parse or validation error, 3 unsupported backend or operation.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semiperfect/adic.hpp"
#include "semiperfect/io.hpp"

namespace semiperfect {

enum ExitCode : int { kExitOk = 0, kExitClaimFailed = 1, kExitInputError = 2, kExitUnsupported = 3 };

struct CommandOptions {
  std::optional<RingDescriptor> ring;  // --ring p,N or --pattern p
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  std::size_t K = 8;
  std::ostream* log = nullptr;  // diagnostics; std::cerr when null
};

struct Claim {
  std::string id;
  bool outcome = false;
  io::Json witness;
};

struct ScenarioReport {
  std::vector<Claim> claims;
  std::vector<std::string> artifacts;

  bool all_true() const;
  /// List of {claim, outcome, witness}.
  io::Json to_json() const;
};

/// Runs `body`, mapping library exceptions to exit codes.
int guarded(const CommandOptions& opt, const std::function<int()>& body);

int cmd_decompose(const CommandOptions& opt, const std::filesystem::path& presentation);
int cmd_certify_semiperfect(const CommandOptions& opt, const std::filesystem::path& module);
int cmd_jacobson_gap(const CommandOptions& opt);
int cmd_lift(const CommandOptions& opt, const std::filesystem::path& seed);
int cmd_split(const CommandOptions& opt, const std::filesystem::path& idempotent);
int cmd_radical(const CommandOptions& opt, const std::filesystem::path& fg_module);
int cmd_cover(const CommandOptions& opt, const std::filesystem::path& fg_module);
int cmd_dual(const CommandOptions& opt, const std::filesystem::path& matrix);

/// Claims (i)-(v) of the Jacobson gap over k[t]_(t) with k = F_p, writing
/// artifacts to `out_dir` when given.
ScenarioReport jacobson_gap_report(Coeff p, std::size_t K,
                                   const std::optional<std::filesystem::path>& out_dir = std::nullopt);
/// Reloads the artifacts written by jacobson_gap_report and re-checks every witness.
bool reverify_jacobson_gap(const std::filesystem::path& dir, std::string* failure = nullptr);

}  // namespace semiperfect
