#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qauth/adversary_kind.hpp"
#include "qauth/ledger.hpp"
#include "qauth/protocols.hpp"

namespace qauth::adversary {

struct RateEstimate {
  double point = 0.0;
  /// 95% Wilson score interval.
  double lo = 0.0;
  double hi = 0.0;
  std::size_t hits = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

RateEstimate wilson(std::size_t hits, std::size_t trials, std::uint64_t seed);

struct EstimateOptions {
  /// Worker threads; 0 or 1 runs sequentially. Results never depend on it.
  unsigned threads = 1;
};

/// Trial t runs with seed mix_seed(seed, t).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Fraction of runs with eavesdrop_detected. Requires trials >= 100.
RateEstimate detection_rate(std::string_view id, const protocols::Params& params, const AdversaryKind& adversary,
                            std::size_t trials, std::uint64_t seed, EstimateOptions options = {});

/// Fraction of runs in which Bob accepts Eve playing Alice. Identity
/// protocols only; data origin ids raise UnsupportedError.
RateEstimate impersonation_acceptance(std::string_view id, const protocols::Params& params, std::size_t trials,
                                      std::uint64_t seed, EstimateOptions options = {});

struct AdversarialCost {
  /// Honest per-run cost at the given parameters (from the ledger fit).
  ledger::ComplexityExpr per_run;
  ledger::ModelClass model;
  /// Fraction of single runs that end in detection or a corrupted result.
  RateEstimate failure;
  /// Mean number of runs per restart-until-success episode.
  double restarts = 1.0;
  /// Episodes that hit the attempt cap (restarts is then a lower estimate).
  /// When no single run succeeded, episodes are not simulated: every one
  /// counts as capped and restarts is set to the cap.
  std::size_t capped_episodes = 0;
  /// "Q_E(f_I) = 1.25 x (3n)".
  std::string notation;
};

inline constexpr std::size_t kMaxAttemptsPerEpisode = 10000;

/// Expected communication until an accepted, intact run when every failed
/// run is restarted from scratch. A None adversary returns the honest
/// expression with restarts = 1 without simulating. The notation uses
/// ">=" instead of "=" when any episode was capped.
AdversarialCost adversarial_cost(std::string_view id, const protocols::Params& params, const AdversaryKind& adversary,
                                 std::size_t trials, std::uint64_t seed, EstimateOptions options = {});

}  // namespace qauth::adversary
