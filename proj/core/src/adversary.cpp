#include "qauth/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>
#include <vector>

#include "qauth/errors.hpp"

namespace qauth::adversary {

namespace {

constexpr double kZ95 = 1.959963984540054;
// Separates restart episodes from the single-run trials of the same seed.
constexpr std::uint64_t kEpisodeStream = 0x6570697364ULL;

// Sums fn(t) over t in [0, trials), split into contiguous chunks per worker.
template <class Fn>
std::size_t parallel_sum(std::size_t trials, unsigned threads, Fn fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    std::size_t total = 0;
    for (std::size_t t = 0; t < trials; ++t) total += fn(t);
    return total;
  }
  std::vector<std::size_t> partial(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = trials * w / workers;
        const std::size_t end = trials * (w + 1) / workers;
        for (std::size_t t = begin; t < end; ++t) partial[w] += fn(t);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::size_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

const protocols::ProtocolSpec& simulable(std::string_view id) {
  const auto& sp = protocols::find(id);
  if (!sp.simulable) throw UnsupportedError(sp.id + " is accounting-only and cannot be simulated");
  return sp;
}

void require_trials(std::size_t trials, std::size_t minimum) {
  if (trials < minimum) throw ArgumentError("at least " + std::to_string(minimum) + " trials are required");
}

}  // namespace

RateEstimate wilson(std::size_t hits, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw ArgumentError("a rate needs at least one trial");
  if (hits > trials) throw ArgumentError("more hits than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  RateEstimate r;
  r.point = p;
  r.lo = std::clamp(centre - half, 0.0, p);
  r.hi = std::clamp(centre + half, p, 1.0);
  r.hits = hits;
  r.trials = trials;
  r.seed = seed;
  return r;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) { return mix_seed(seed, trial); }

RateEstimate detection_rate(std::string_view id, const protocols::Params& params, const AdversaryKind& adversary,
                            std::size_t trials, std::uint64_t seed, EstimateOptions options) {
  simulable(id);
  require_trials(trials, 100);
  validate(adversary);
  const std::size_t hits = parallel_sum(trials, options.threads, [&](std::size_t t) -> std::size_t {
    return protocols::run(id, params, trial_seed(seed, t), adversary).outcome.eavesdrop_detected ? 1 : 0;
  });
  return wilson(hits, trials, seed);
}

RateEstimate impersonation_acceptance(std::string_view id, const protocols::Params& params, std::size_t trials,
                                      std::uint64_t seed, EstimateOptions options) {
  const auto& sp = simulable(id);
  if (sp.kind != ledger::AuthKind::Identity)
    throw UnsupportedError(sp.id + " authenticates data origin; impersonation acceptance applies to identity protocols");
  require_trials(trials, 1);
  const AdversaryKind eve = make_impersonation();
  const std::size_t hits = parallel_sum(trials, options.threads, [&](std::size_t t) -> std::size_t {
    return protocols::run(id, params, trial_seed(seed, t), eve).outcome.accepted ? 1 : 0;
  });
  return wilson(hits, trials, seed);
}

AdversarialCost adversarial_cost(std::string_view id, const protocols::Params& params, const AdversaryKind& adversary,
                                 std::size_t trials, std::uint64_t seed, EstimateOptions options) {
  const auto& sp = simulable(id);
  require_trials(trials, 1);
  validate(adversary);
  const auto analysis = protocols::analyze(id, params);

  AdversarialCost cost;
  cost.per_run = analysis.fit->expr;
  cost.model = analysis.fit->model;
  if (is_none(adversary)) {
    cost.failure = wilson(0, trials, seed);
    cost.restarts = 1.0;
    cost.notation = ledger::notation(cost.model, cost.per_run, sp.kind, true);
    return cost;
  }

  // Failure covers undetected corruption too: the parties find it when the
  // result is checked and must start over.
  const std::size_t failures = parallel_sum(trials, options.threads, [&](std::size_t t) -> std::size_t {
    return protocols::run(id, params, trial_seed(seed, t), adversary).outcome.success() ? 0 : 1;
  });
  cost.failure = wilson(failures, trials, seed);

  if (failures == trials) {
    // The attack always wins; episodes would only run into the cap.
    cost.capped_episodes = trials;
    cost.restarts = static_cast<double>(kMaxAttemptsPerEpisode);
  } else {
    const std::uint64_t episode_root = mix_seed(seed, kEpisodeStream);
    std::vector<std::uint8_t> capped(trials, 0);
    const std::size_t attempts = parallel_sum(trials, options.threads, [&](std::size_t t) -> std::size_t {
      const std::uint64_t episode = mix_seed(episode_root, t);
      for (std::size_t a = 1; a <= kMaxAttemptsPerEpisode; ++a)
        if (protocols::run(id, params, mix_seed(episode, a), adversary).outcome.success()) return a;
      capped[t] = 1;
      return kMaxAttemptsPerEpisode;
    });
    cost.capped_episodes = static_cast<std::size_t>(std::count(capped.begin(), capped.end(), 1));
    cost.restarts = static_cast<double>(attempts) / static_cast<double>(trials);
  }

  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << cost.restarts;
  const std::string plain = ledger::notation(cost.model, cost.per_run, sp.kind, true);
  const auto eq = plain.find(" = ");
  cost.notation = plain.substr(0, eq) + (cost.capped_episodes > 0 ? " >= " : " = ") + os.str() + " x (" +
                  cost.per_run.render() + ")";
  return cost;
}

}  // namespace qauth::adversary
