#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "qauth/party.hpp"
#include "qauth/qsim.hpp"
#include "qauth/rng.hpp"

/// Eve's strategies. The channel runs the intercept and substitution hooks;
/// impersonation is a role swap the protocol runners consult directly.
namespace qauth::adversary {

struct None {};

struct FixedBasis {
  qsim::Basis basis;
};
/// Computational or Diagonal, each with probability 1/2, per qubit.
struct UniformRandomBasis {};
using BasisStrategy = std::variant<FixedBasis, UniformRandomBasis>;

/// Eve measures every in-flight qubit and forwards the collapsed qubit.
struct InterceptResend {
  BasisStrategy strategy = UniformRandomBasis{};
  /// Only sends whose sender is this party are attacked (all when empty).
  std::optional<Party> only_from;
};

/// X on the index-th qubit put in flight during the session (0-based,
/// counted across all quantum transmissions).
struct FlipQubit {
  std::size_t index = 0;
};
/// XOR a fixed mask (repeated cyclically) onto classical payloads. An empty
/// mask means: replace each payload with uniformly random bits.
struct RewriteClassical {
  Bits mask;
};
using TamperRule = std::variant<FlipQubit, RewriteClassical>;

struct Substitution {
  TamperRule rule;
  std::optional<Party> only_from;
};

/// Eve stands in for the claimant, holding no key material and no shared
/// entanglement, and guesses secrets uniformly.
struct UniformKeyGuess {};
struct Impersonation {
  UniformKeyGuess strategy;
};

using AdversaryKind = std::variant<None, InterceptResend, Substitution, Impersonation>;

/// Throws ArgumentError for malformed strategy parameters.
void validate(const AdversaryKind& kind);

AdversaryKind make_intercept(BasisStrategy strategy, std::optional<Party> only_from = std::nullopt);
AdversaryKind make_substitution(TamperRule rule, std::optional<Party> only_from = std::nullopt);
AdversaryKind make_impersonation();

std::string describe(const AdversaryKind& kind);

inline bool is_none(const AdversaryKind& kind) { return std::holds_alternative<None>(kind); }
inline bool is_impersonation(const AdversaryKind& kind) {
  return std::holds_alternative<Impersonation>(kind);
}

}  // namespace qauth::adversary
