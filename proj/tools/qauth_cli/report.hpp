#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qauth/adversary.hpp"
#include "qauth/ledger.hpp"
#include "qauth/protocols.hpp"

namespace qauth::cli {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

struct ReportParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool operator==(const ReportParams&) const = default;
};

struct OutcomeSummary {
  bool accepted = false;
  bool eavesdrop_detected = false;
  bool success = false;
  std::optional<std::string> sent_message;
  std::optional<std::string> recovered_message;
  std::optional<std::vector<double>> session_key;
  bool operator==(const OutcomeSummary&) const = default;
};

struct Rate {
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t hits = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool operator==(const Rate&) const = default;
};

struct CostSummary {
  std::string per_run;
  double restarts = 1.0;
  std::size_t capped_episodes = 0;
  Rate failure;
  std::string notation;
  bool operator==(const CostSummary&) const = default;
};

struct Rates {
  std::optional<Rate> detection;
  std::optional<Rate> impersonation_acceptance;
  std::optional<CostSummary> adversarial_cost;
  bool operator==(const Rates&) const = default;
};

/// Result of `run`: one execution plus optional Monte Carlo estimates.
struct Report {
  std::string schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string protocol;
  std::string kind;
  ReportParams params;
  std::string adversary;
  ledger::ResourceTally tally;
  std::string model;
  bool classification_flagged = false;
  std::size_t cost = 0;
  std::string expression;
  OutcomeSummary outcome;
  std::optional<Rates> rates;
  std::optional<std::string> timestamp;
  bool operator==(const Report&) const = default;
};

Rate to_rate(const adversary::RateEstimate& r);
std::string bits_text(const Bits& bits);
std::string kind_label(ledger::AuthKind kind);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string render_text(const Report& r);

}  // namespace qauth::cli
