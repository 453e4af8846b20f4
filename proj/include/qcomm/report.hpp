#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qcomm/casebook.hpp"
#include "qcomm/closure.hpp"
#include "qcomm/coadjoint.hpp"
#include "qcomm/lie_algebra.hpp"

namespace qcomm {

inline constexpr const char* kReportSchema = "qcomm-report/1";

enum class ReportFormat { Text, Json, Latex };
ReportFormat parse_report_format(const std::string& s);

struct RunReport {
  std::vector<std::string> command;
  std::vector<std::pair<std::string, double>> timings;  // seconds per phase
  nlohmann::json payload = nlohmann::json::object();    // carries a "kind" field
  int exit_code = 0;
};

nlohmann::json to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);

nlohmann::json validation_payload(const LieAlgebra& a, const ValidationReport& v);
nlohmann::json solve_payload(const SolutionSpace& s, const std::vector<SymPolynomial>& candidates,
                             const std::vector<SymPolynomial>& independent);
nlohmann::json closure_payload(const ClosureReport& r);
nlohmann::json case_payload(const CaseResult& r);
nlohmann::json realization_payload(const RealizationReport& r);

/// Report in the requested format; json output is the schema object.
std::string render(const RunReport& r, ReportFormat f, bool with_timings = true);

/// Display conversion of an expression in text syntax: A12 -> A_{12}, * -> space.
std::string latex_expr(const std::string& text);

}  // namespace qcomm
