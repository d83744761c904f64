#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qauth/adversary_kind.hpp"
#include "qauth/party.hpp"
#include "qauth/qsim.hpp"
#include "qauth/register.hpp"
#include "qauth/rng.hpp"

namespace qauth::channel {

enum class EbitPhase { Prior, InProtocol };

struct QuantumSend {
  std::size_t count = 0;
  bool operator==(const QuantumSend&) const = default;
};
struct ClassicalSend {
  std::size_t count = 0;
  bool operator==(const ClassicalSend&) const = default;
};
struct EbitDistribution {
  std::size_t count = 0;
  EbitPhase phase = EbitPhase::Prior;
  bool operator==(const EbitDistribution&) const = default;
};
using EventKind = std::variant<QuantumSend, ClassicalSend, EbitDistribution>;

struct ChannelEvent {
  std::uint64_t seq = 0;
  Party sender = Party::Alice;
  Party receiver = Party::Bob;
  EventKind kind;
  std::string tag;
};

struct PairHandle {
  Handle first;
  Handle second;
};

/// What Eve learned from one intercepted qubit.
struct EveObservation {
  std::uint64_t seq;
  Handle qubit;
  double basis_angle;
  std::uint8_t outcome;
};

struct SessionOptions {
  /// Total qubits a session may allocate.
  std::size_t capacity = 1024;
};

/// One protocol execution: participants, a factored global register with an
/// ownership map, an append-only event log, and an optional adversary.
///
/// Parties act only on qubits they own; sends are the only ownership
/// transfers. Randomness comes from streams split off the session seed, so
/// an installed None adversary leaves every draw unchanged.
class Session {
 public:
  /// Requires Alice and Bob; Eve is never a declared participant.
  static Session open(std::set<Party> participants, std::uint64_t seed, SessionOptions options = {});

  std::uint64_t seed() const { return seed_; }
  const std::set<Party>& participants() const { return participants_; }

  /// Must precede every logged event.
  void install_adversary(adversary::AdversaryKind kind);
  const adversary::AdversaryKind& adversary() const { return adversary_; }
  /// The party that plays `role` in this run: Eve when she impersonates it.
  Party acting_as(Party role) const;

  /// Allocates 2*count qubits and entangles them pairwise; `first` keeps the
  /// first half and `second` receives the other. InProtocol distributions
  /// put the transmitted halves in flight (and through Eve's hooks).
  std::vector<PairHandle> distribute_ebits(std::size_t count, qsim::BellKind kind, EbitPhase phase,
                                           Party first = Party::Alice, Party second = Party::Bob,
                                           std::string_view tag = "ebits");

  /// Fresh |0> qubits owned by `owner` (local preparation, not logged).
  std::vector<Handle> allocate(Party owner, std::size_t count);

  std::vector<Handle> send_qubits(Party from, Party to, std::span<const Handle> handles,
                                  std::string_view tag);
  Bits send_classical(Party from, Party to, const Bits& bits, std::string_view tag);

  void apply(Party actor, const qsim::Gate& g, std::span<const Handle> targets);
  void apply(Party actor, const qsim::Gate& g, std::initializer_list<Handle> targets) {
    apply(actor, g, std::span<const Handle>(targets.begin(), targets.size()));
  }
  Bits measure(Party actor, std::span<const Handle> targets, const qsim::Basis& b);
  std::uint8_t measure(Party actor, Handle target, const qsim::Basis& b);
  qsim::BellKind measure_bell(Party actor, Handle a, Handle b);

  Party owner(Handle h) const;
  const std::vector<ChannelEvent>& event_log() const { return log_; }
  const std::vector<EveObservation>& eve_log() const { return eve_log_; }

  /// Randomness for protocol decisions (keys, nonces, messages).
  Rng& party_rng() { return party_rng_; }
  /// Eve's own randomness (basis choices, key guesses).
  Rng& eve_rng() { return eve_rng_; }
  FactoredRegister& qubits() { return register_; }

 private:
  Session(std::set<Party> participants, std::uint64_t seed, SessionOptions options);

  bool may_act(Party p) const;
  void require_actor(Party p) const;
  void require_owned(Party actor, std::span<const Handle> handles) const;
  std::uint64_t append(Party from, Party to, EventKind kind, std::string_view tag);
  void quantum_hook(Party from, std::uint64_t seq, std::span<const Handle> in_flight);
  Bits classical_hook(Party from, Bits payload);

  std::set<Party> participants_;
  std::uint64_t seed_;
  adversary::AdversaryKind adversary_ = adversary::None{};
  FactoredRegister register_;
  std::vector<Party> owners_;
  std::vector<ChannelEvent> log_;
  std::vector<EveObservation> eve_log_;
  std::size_t qubits_in_flight_so_far_ = 0;
  Rng party_rng_;
  Rng measurement_rng_;
  Rng eve_rng_;
};

}  // namespace qauth::channel
