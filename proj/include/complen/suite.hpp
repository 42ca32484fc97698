#pragma once

/**
 * @file suite.hpp
 * @brief Regression cases for the published results, behind `complen verify-paper`.
 *
 * Every case names the statement it reproduces (its anchor) and whether the
 * expected value is quoted from the literature or obtained from an
 * independent computation.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace complen {

enum class CaseStatus { pass, fail, skip, error };
enum class CaseSource { stated, computed };

const char* case_status_name(CaseStatus s);
const char* case_source_name(CaseSource s);

struct CaseOutcome {
  CaseStatus status = CaseStatus::fail;
  std::string expected;
  std::string measured;
  std::string detail;
};

struct SuiteCase {
  std::string id;
  std::string anchor;
  CaseSource source = CaseSource::stated;
  std::function<CaseOutcome(std::uint64_t seed)> run;
};

struct CaseResult {
  std::string id;
  std::string anchor;
  CaseSource source = CaseSource::stated;
  CaseOutcome outcome;
  double seconds = 0;
};

/// The registered cases, validated: unique ids and non-empty anchors.
const std::vector<SuiteCase>& suite_cases();

/// Throws InvariantViolation on a duplicate id or an empty anchor.
void validate_cases(const std::vector<SuiteCase>& cases);

/// Shell-style glob ('*', '?', '[...]').
bool glob_match(std::string_view pattern, std::string_view text);

/// Runs the cases whose id matches `filter`, results sorted by id. A case
/// that throws is reported with status error.
std::vector<CaseResult> run_suite(const std::vector<SuiteCase>& cases, std::string_view filter, unsigned jobs,
                                  std::uint64_t seed);

/// Columns: id, status, expected, measured, seconds ("-" unless timing).
std::string suite_tsv(const std::vector<CaseResult>& results, bool timing);
std::string suite_json(const std::vector<CaseResult>& results, bool timing);

bool suite_passed(const std::vector<CaseResult>& results);

}  // namespace complen
