#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ytile {

inline constexpr std::size_t kLinearizationSamples = 100'000;

/// One assertion inside an audit suite.
struct AuditCheck {
  std::string name;
  nlohmann::json computed;
  nlohmann::json expected;
  bool pass = false;
  /// Reported for reference only; never affects the suite verdict.
  bool informational = false;
};

struct AuditSuiteResult {
  std::string suite;
  std::vector<AuditCheck> checks;
  nlohmann::json extra = nlohmann::json::object();

  bool pass() const;
};

const std::vector<std::string>& audit_suite_names();

/// Runs one named suite at its desk-scale parameters. The seed is used only by stochastic
/// suites (linearization); they throw std::invalid_argument when it is missing.
AuditSuiteResult run_audit_suite(const std::string& suite, std::optional<std::uint64_t> seed,
                                 std::size_t samples = kLinearizationSamples);

bool audit_suite_needs_seed(const std::string& suite);

nlohmann::json to_json(const AuditSuiteResult& r);

/// Samples `samples` rational triples (denominators 1..12) and counts how often the sorted-chain
/// test and the sum <= 4·min test agree.
struct LinearizationTally {
  std::size_t samples = 0;
  std::size_t agreements = 0;
  std::size_t chain_true = 0;
};
LinearizationTally linearization_tally(std::uint64_t seed, std::size_t samples);

}  // namespace ytile
