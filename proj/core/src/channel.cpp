#include "qauth/channel.hpp"

#include <string>

#include "qauth/errors.hpp"

namespace qauth::channel {

namespace {

// Stream ids for Rng::split; fixed so sessions replay bit-exactly.
constexpr std::uint64_t kPartyStream = 1;
constexpr std::uint64_t kMeasurementStream = 2;
constexpr std::uint64_t kEveStream = 3;

bool filter_matches(const std::optional<Party>& only_from, Party from) {
  return !only_from || *only_from == from;
}

}  // namespace

Session::Session(std::set<Party> participants, std::uint64_t seed, SessionOptions options)
    : participants_(std::move(participants)),
      seed_(seed),
      register_(options.capacity),
      party_rng_(Rng(seed).split(kPartyStream)),
      measurement_rng_(Rng(seed).split(kMeasurementStream)),
      eve_rng_(Rng(seed).split(kEveStream)) {}

Session Session::open(std::set<Party> participants, std::uint64_t seed, SessionOptions options) {
  if (!participants.contains(Party::Alice) || !participants.contains(Party::Bob))
    throw ConfigurationError("a session needs at least Alice and Bob");
  if (participants.contains(Party::Eve))
    throw ConfigurationError("Eve is installed as an adversary, not declared as a participant");
  return Session(std::move(participants), seed, options);
}

void Session::install_adversary(adversary::AdversaryKind kind) {
  if (!log_.empty()) throw StateError("the adversary must be installed before the run starts");
  adversary::validate(kind);
  adversary_ = std::move(kind);
}

Party Session::acting_as(Party role) const {
  if (role == Party::Alice && adversary::is_impersonation(adversary_)) return Party::Eve;
  return role;
}

bool Session::may_act(Party p) const {
  if (p == Party::Eve) return adversary::is_impersonation(adversary_);
  return participants_.contains(p);
}

void Session::require_actor(Party p) const {
  if (!may_act(p))
    throw ProtocolLogicError(std::string(to_string(p)) + " is not an active party in this session");
}

void Session::require_owned(Party actor, std::span<const Handle> handles) const {
  require_actor(actor);
  for (Handle h : handles) {
    if (h >= owners_.size()) throw IndexError("unknown qubit handle " + std::to_string(h));
    if (owners_[h] != actor)
      throw ProtocolLogicError(std::string(to_string(actor)) + " does not own qubit " + std::to_string(h) +
                               " (owner: " + std::string(to_string(owners_[h])) + ")");
  }
}

std::uint64_t Session::append(Party from, Party to, EventKind kind, std::string_view tag) {
  const std::uint64_t seq = log_.size() + 1;
  log_.push_back(ChannelEvent{seq, from, to, std::move(kind), std::string(tag)});
  return seq;
}

std::vector<PairHandle> Session::distribute_ebits(std::size_t count, qsim::BellKind kind, EbitPhase phase,
                                                  Party first, Party second, std::string_view tag) {
  if (count == 0) throw ArgumentError("ebit count must be at least 1");
  if (first == second) throw ArgumentError("ebits are shared between two different parties");
  require_actor(first);
  require_actor(second);
  if (register_.size() + 2 * count > register_.capacity())
    throw CapacityError("distributing " + std::to_string(count) + " pairs exceeds the register capacity of " +
                        std::to_string(register_.capacity()) + " qubits");

  std::vector<PairHandle> pairs;
  pairs.reserve(count);
  std::vector<Handle> travelling;
  for (std::size_t i = 0; i < count; ++i) {
    const auto q = register_.allocate(2);
    register_.prepare_pair(q[0], q[1], kind);
    owners_.push_back(first);
    owners_.push_back(first);
    pairs.push_back({q[0], q[1]});
    travelling.push_back(q[1]);
  }
  const std::uint64_t seq = append(first, second, EbitDistribution{count, phase}, tag);
  if (phase == EbitPhase::InProtocol) quantum_hook(first, seq, travelling);
  for (Handle h : travelling) owners_[h] = second;
  return pairs;
}

std::vector<Handle> Session::allocate(Party owner, std::size_t count) {
  require_actor(owner);
  auto handles = register_.allocate(count);
  owners_.resize(register_.size(), owner);
  return handles;
}

std::vector<Handle> Session::send_qubits(Party from, Party to, std::span<const Handle> handles,
                                         std::string_view tag) {
  if (handles.empty()) throw ArgumentError("a quantum send carries at least one qubit");
  require_actor(to);
  require_owned(from, handles);
  const std::uint64_t seq = append(from, to, QuantumSend{handles.size()}, tag);
  quantum_hook(from, seq, handles);
  for (Handle h : handles) owners_[h] = to;
  return {handles.begin(), handles.end()};
}

Bits Session::send_classical(Party from, Party to, const Bits& bits, std::string_view tag) {
  if (bits.empty()) throw ArgumentError("a classical send carries at least one bit");
  for (auto b : bits)
    if (b > 1) throw ArgumentError("classical payloads are bit arrays (0/1)");
  require_actor(from);
  require_actor(to);
  append(from, to, ClassicalSend{bits.size()}, tag);
  return classical_hook(from, bits);
}

void Session::quantum_hook(Party from, std::uint64_t seq, std::span<const Handle> in_flight) {
  if (const auto* a = std::get_if<adversary::InterceptResend>(&adversary_)) {
    if (filter_matches(a->only_from, from)) {
      for (Handle h : in_flight) {
        qsim::Basis basis = qsim::basis::Computational{};
        if (const auto* f = std::get_if<adversary::FixedBasis>(&a->strategy)) {
          basis = f->basis;
        } else if (eve_rng_.bit()) {
          basis = qsim::basis::Diagonal{};
        }
        const Handle one[1] = {h};
        const auto outcome = register_.measure(one, basis, eve_rng_);
        eve_log_.push_back({seq, h, qsim::basis_angle(basis), outcome.front()});
      }
    }
  } else if (const auto* s = std::get_if<adversary::Substitution>(&adversary_)) {
    if (const auto* flip = std::get_if<adversary::FlipQubit>(&s->rule)) {
      const std::size_t begin = qubits_in_flight_so_far_;
      if (filter_matches(s->only_from, from) && flip->index >= begin &&
          flip->index < begin + in_flight.size()) {
        const Handle one[1] = {in_flight[flip->index - begin]};
        register_.apply(qsim::gate::X{}, one);
      }
    }
  }
  qubits_in_flight_so_far_ += in_flight.size();
}

Bits Session::classical_hook(Party from, Bits payload) {
  const auto* s = std::get_if<adversary::Substitution>(&adversary_);
  if (s == nullptr || !filter_matches(s->only_from, from)) return payload;
  const auto* rewrite = std::get_if<adversary::RewriteClassical>(&s->rule);
  if (rewrite == nullptr) return payload;
  if (rewrite->mask.empty()) return eve_rng_.bits(payload.size());
  for (std::size_t i = 0; i < payload.size(); ++i) payload[i] ^= rewrite->mask[i % rewrite->mask.size()];
  return payload;
}

void Session::apply(Party actor, const qsim::Gate& g, std::span<const Handle> targets) {
  require_owned(actor, targets);
  register_.apply(g, targets);
}

Bits Session::measure(Party actor, std::span<const Handle> targets, const qsim::Basis& b) {
  require_owned(actor, targets);
  return register_.measure(targets, b, measurement_rng_);
}

std::uint8_t Session::measure(Party actor, Handle target, const qsim::Basis& b) {
  const Handle one[1] = {target};
  return measure(actor, one, b).front();
}

qsim::BellKind Session::measure_bell(Party actor, Handle a, Handle b) {
  const Handle pair[2] = {a, b};
  require_owned(actor, pair);
  return register_.measure_bell(a, b, measurement_rng_);
}

Party Session::owner(Handle h) const {
  if (h >= owners_.size()) throw IndexError("unknown qubit handle " + std::to_string(h));
  return owners_[h];
}

}  // namespace qauth::channel
