#pragma once

#include <iosfwd>

#include "mgl/report.hpp"

namespace mgl {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,      // identity or verification failure
  kExitInputError = 2,   // bad arguments, unreadable or rejected spec, domain errors
  kExitDistrust = 3,     // flagged nodes above the budget
};

/// Each command writes its report (to cfg.json_path, or `out` when empty)
/// and returns an ExitCode. Diagnostics go to `err`.
int cmd_identities(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_thresholds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog_list(std::ostream& out);

/// Full command line: parses arguments and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Second CSV path for the gamma table: "t.csv" -> "t_gamma.csv".
std::string gamma_csv_path(const std::string& csv_path);

}  // namespace mgl
