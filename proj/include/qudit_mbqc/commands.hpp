#pragma once

#include <iosfwd>

#include "qudit_mbqc/report.hpp"

namespace qmbqc {

enum ExitCode : int { kExitPass = 0, kExitChecksFailed = 1, kExitConfigError = 2, kExitBranchCap = 3 };

/// Branch cap from QUDIT_MBQC_BRANCH_CAP, or kDefaultBranchCap.
std::size_t branch_cap_from_env();

/// Builds the report for `config` without writing it. Throws ConfigError /
/// DomainError on bad input and BranchCapExceeded on the cap.
nlohmann::json build_report(const RunConfig& config);

/// Runs one command end to end: builds the report, writes it to config.out
/// (stdout when empty) and maps failures onto the exit-code contract.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qmbqc
