#ifndef NSMILD_COMMANDS_HPP
#define NSMILD_COMMANDS_HPP

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace nsmild::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 1,
    exit_blowup = 2,
    exit_verification_failed = 3,
};

struct CommandOptions {
    std::string config_path;
    /// Overrides run.out_dir when nonempty.
    std::string out_dir;
    /// Overrides run.seed.
    std::optional<std::uint64_t> seed;
    bool quiet = false;
    std::ostream* out = &std::cout;
    std::ostream* err = &std::cerr;
};

/// Marches (or Picard-solves) the configured problem and writes
/// diagnostics.csv, snapshot_NNNNNN.nsms files and manifest.json.
int cmd_run(const CommandOptions& options);
/// Runs the identity/claim suite; writes report.json.
int cmd_verify(const CommandOptions& options);
/// Bilinear-estimate constants, norm-equivalence ratios and the assumption (F) probe; writes report.json.
int cmd_estimate(const CommandOptions& options);
/// Taylor-Green comparison; writes oracle.csv and report.json.
int cmd_oracle(const CommandOptions& options);

} // namespace nsmild::cli

#endif // NSMILD_COMMANDS_HPP
