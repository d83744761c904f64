#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qauth/adversary_kind.hpp"
#include "qauth/channel.hpp"
#include "qauth/ledger.hpp"
#include "qauth/rng.hpp"

namespace qauth::protocols {

struct ProtocolSpec {
  std::string id;
  ledger::AuthKind kind;
  ledger::ModelClass declared_model;
  ledger::ComplexityExpr declared_complexity;
  bool simulable;
  std::string citation;
};

/// All ten protocols, in a fixed order: data origin first, then identity.
const std::vector<ProtocolSpec>& registry();
/// Throws UnknownProtocolError.
const ProtocolSpec& find(std::string_view id);

struct Outcome {
  bool accepted = false;
  /// Data origin protocols only.
  Bits sent_message;
  Bits recovered_message;
  bool eavesdrop_detected = false;
  /// Kanamori only.
  std::optional<std::vector<double>> session_key;

  /// Accepted, undetected, and (for data origin) the message arrived intact.
  bool success() const { return accepted && !eavesdrop_detected && recovered_message == sent_message; }
};

struct AngleKey {
  std::vector<double> angles;
};
struct BitKey {
  Bits bits;
};
struct Theta {
  double angle = 0.0;
};
using AuthKey = std::variant<AngleKey, BitKey, Theta>;

/// Angles must be finite and in [0, pi); bits must be 0/1.
void validate(const AuthKey& key);

/// Keys are drawn on a grid of kAngleLevels steps over [0, pi).
inline constexpr std::uint64_t kAngleLevels = 1024;
double quantized_angle(std::uint64_t level);
double random_angle(Rng& rng);
AngleKey random_angle_key(std::size_t n, Rng& rng);

// Each run distributes its own prior entanglement and draws message and
// nonces from session.party_rng(). Under an installed Impersonation the
// Alice role is played by Eve, who holds neither key nor entangled halves.

Outcome run_kanamori(channel::Session& session, std::size_t n, const AngleKey& key);
Outcome run_zhang_li_guo(channel::Session& session, std::size_t n, std::size_t k, Theta theta);
Outcome run_li_barnum(channel::Session& session, std::size_t n);
Outcome run_li_zhang(channel::Session& session, const Bits& message);
Outcome run_curty_santos(channel::Session& session, const Bits& message);
Outcome run_zeng_guo(channel::Session& session, std::size_t n, std::size_t s, const BitKey& k1);

struct Params {
  std::size_t n = 4;
  std::size_t m = 4;
  /// Zeng-Guo security parameter.
  std::size_t s = 0;
  /// Zhang-Li-Guo pair budget; 0 means k = n.
  std::size_t k = 0;
  /// Data origin message; drawn at random when absent.
  std::optional<Bits> message;
};

struct RunResult {
  Outcome outcome;
  std::vector<channel::ChannelEvent> events;
  std::vector<channel::EveObservation> eve_log;
  ledger::ResourceTally tally;
};

/// Opens a session for `id`, draws fresh keys from it, and runs one
/// execution. Throws UnsupportedError for accounting-only ids and for
/// impersonation of a data origin protocol.
RunResult run(std::string_view id, const Params& params, std::uint64_t seed,
              const adversary::AdversaryKind& adversary = adversary::None{});

/// Sizes used by analyze: the Cartesian grid {2,4,8}^2 and held-out (16,16).
std::vector<ledger::GridPoint> analysis_grid();
std::vector<ledger::GridPoint> analysis_holdout();

/// Exact declarations must match term for term. A lower bound is met when
/// the fitted slopes equal the declared ones and the constant is no smaller.
bool agrees(const ledger::ComplexityExpr& fitted, const ledger::ComplexityExpr& declared);

struct Analysis {
  const ProtocolSpec* spec;
  std::optional<ledger::FitResult> fit;
  /// Absent for accounting-only entries.
  std::optional<bool> agreement;
  std::optional<bool> model_agreement;
};

/// Fits honest runs over analysis_grid() (other parameters from `base`).
Analysis analyze(std::string_view id, const Params& base = {});

}  // namespace qauth::protocols
