#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pbelint/detectors.hpp"

namespace pbelint::cli {

enum ExitCode : int { kOk = 0, kUserError = 1, kInternalError = 2 };

/// Entry point of the `pbelint` tool. argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lint report object for one example, as a single JSON line.
std::string format_report(const std::string& id, const AmbiguityReport& report);

/// Human-readable rendering of a report.
std::string render_report_text(const Example& e, const AmbiguityReport& report);

}  // namespace pbelint::cli
