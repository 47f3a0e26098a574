#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "swipe/evaluator.hpp"
#include "swipe/swipe.hpp"

namespace swipe::cli {

/// Entry point shared by the executable and the tests. Returns the process
/// exit status; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json report_json(const RepairOutcome& outcome, const Schema& schema);
nlohmann::json quality_json(const QualityReport& report);

}  // namespace swipe::cli
