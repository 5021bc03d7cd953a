#pragma once

#include "json.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spherik/criteria.hpp"
#include "spherik/functional.hpp"

namespace spherik {

/// Everything a CLI invocation prints.  Values are exact strings; the JSON
/// form round-trips losslessly.
struct Report {
  std::string command;
  std::string input;
  std::optional<std::string> outcome;  // EXISTS / NOT_EXISTS / INDETERMINATE
  int exit_code = 0;
  std::string criterion;  // which criterion fired
  std::string statement;  // the statement it instantiates
  std::string certificate;
  std::vector<std::pair<std::string, std::string>> values;
  std::optional<PLFunction> witness;
  std::optional<std::string> witness_value;
  std::vector<std::string> trace;
  std::vector<std::string> notes;
  std::optional<double> elapsed_ms;  // only with --timing

  bool operator==(const Report&) const = default;
};

enum class Format { kText, kJson };

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& document);
std::string emit_report(const Report& report, Format format);

/// Statement text for a criterion identifier.
std::string criterion_statement(const std::string& criterion);

/// Copies a verdict (outcome, witness, diagnostics) into a report.
void attach_verdict(Report& report, const Verdict& verdict);

int exit_code_for(Outcome outcome);

}  // namespace spherik
