#include "qauth/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qauth/errors.hpp"

namespace qauth::protocols {

namespace {

using channel::EbitPhase;
using channel::Session;
using ledger::AuthKind;
using ledger::ModelClass;
using qsim::BellKind;
namespace gate = qsim::gate;
namespace basis = qsim::basis;

constexpr double kPi = std::numbers::pi;

gate::Ry key_rotation(double angle) { return gate::Ry{qsim::kKeyAngleScale * angle}; }

void encode_bits(Session& s, Party who, std::span<const Handle> qs, const Bits& bits) {
  for (std::size_t i = 0; i < qs.size(); ++i)
    if (bits[i]) s.apply(who, gate::X{}, {qs[i]});
}

// Same circuit as StateVector::prepare_pair, run as local gates by `who`.
void prepare_bell(Session& s, Party who, Handle a, Handle b, BellKind kind) {
  if (kind == BellKind::PhiMinus || kind == BellKind::PsiMinus) s.apply(who, gate::X{}, {a});
  s.apply(who, gate::H{}, {a});
  s.apply(who, gate::Cnot{}, {a, b});
  if (kind == BellKind::PsiPlus || kind == BellKind::PsiMinus) s.apply(who, gate::X{}, {b});
}

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw ArgumentError(std::string(what) + " must be at least 1");
}

void require_message(const Bits& message) {
  if (message.empty()) throw ArgumentError("message must have at least one bit");
  if (std::any_of(message.begin(), message.end(), [](auto b) { return b > 1; }))
    throw ArgumentError("message bits must be 0/1");
}

void refuse_data_origin_impersonation(const Session& s, std::string_view id) {
  if (adversary::is_impersonation(s.adversary()))
    throw UnsupportedError(std::string(id) + " authenticates data origin; impersonation applies to identity protocols");
}

Bits xor_bits(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

std::uint64_t key_digest(const Bits& bits) {
  std::uint64_t h = bits.size();
  for (auto b : bits) h = mix_seed(h, b);
  return h;
}

ProtocolSpec spec(std::string id, AuthKind kind, ModelClass model, ledger::ComplexityExpr expr, bool simulable,
                  std::string citation) {
  return {std::move(id), kind, model, expr, simulable, std::move(citation)};
}

}  // namespace

const std::vector<ProtocolSpec>& registry() {
  using ledger::exact;
  using ledger::lower_bound;
  static const std::vector<ProtocolSpec> specs = {
      spec("barnum_purity", AuthKind::DataOrigin, ModelClass::Yao, exact(1, 1), false,
           "Barnum, Crepeau, Gottesman, Smith, Tapp: authentication of quantum messages (purity testing codes)"),
      spec("yang_goppa", AuthKind::DataOrigin, ModelClass::Yao, exact(0, 2), false,
           "Yang et al.: quantum message authentication based on classical NP-complete problem (Goppa codes)"),
      spec("curty_santos", AuthKind::DataOrigin, ModelClass::Hybrid, exact(0, 2), true,
           "Curty, Santos: quantum authentication of classical messages"),
      spec("li_zhang", AuthKind::DataOrigin, ModelClass::Hybrid, exact(0, 2), true,
           "Li, Zhang et al.: quantum message authentication with EPR pairs"),
      spec("kanamori", AuthKind::Identity, ModelClass::Yao, exact(3, 0), true,
           "Kanamori, Yoo, Al-Shurman: a quantum no-key protocol for secure data communication"),
      spec("zeng_guo", AuthKind::Identity, ModelClass::CleveBuhrman, lower_bound(2, 0), true,
           "Zeng, Guo: authentication protocol based on entangled pairs and classical cipher"),
      spec("li_barnum", AuthKind::Identity, ModelClass::Hybrid, exact(2, 0), true,
           "Li, Barnum: quantum authentication using entangled states"),
      spec("zhang_li_guo", AuthKind::Identity, ModelClass::Hybrid, exact(2, 0), true,
           "Zhang, Li, Guo: quantum authentication using entangled state (rotated reusable pairs)"),
      spec("barnum_catalysis", AuthKind::Identity, ModelClass::Hybrid, lower_bound(1, 0), false,
           "Barnum: quantum secure identification using entanglement and catalysis"),
      spec("zeng_zhang", AuthKind::Identity, ModelClass::Hybrid, lower_bound(4, 0), false,
           "Zeng, Zhang: identity verification in quantum key distribution"),
  };
  return specs;
}

const ProtocolSpec& find(std::string_view id) {
  for (const auto& s : registry())
    if (s.id == id) return s;
  throw UnknownProtocolError("unknown protocol id '" + std::string(id) + "'");
}

void validate(const AuthKey& key) {
  auto check_angle = [](double a) {
    if (!std::isfinite(a) || a < 0.0 || a >= kPi) throw ArgumentError("key angles must lie in [0, pi)");
  };
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, AngleKey>) {
          for (double a : k.angles) check_angle(a);
        } else if constexpr (std::is_same_v<T, BitKey>) {
          if (std::any_of(k.bits.begin(), k.bits.end(), [](auto b) { return b > 1; }))
            throw ArgumentError("key bits must be 0/1");
        } else {
          check_angle(k.angle);
        }
      },
      key);
}

double quantized_angle(std::uint64_t level) {
  if (level >= kAngleLevels) throw ArgumentError("angle level out of range");
  return static_cast<double>(level) * kPi / static_cast<double>(kAngleLevels);
}

double random_angle(Rng& rng) { return quantized_angle(rng.below(kAngleLevels)); }

AngleKey random_angle_key(std::size_t n, Rng& rng) {
  AngleKey key;
  key.angles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) key.angles.push_back(random_angle(rng));
  return key;
}

Outcome run_kanamori(Session& s, std::size_t n, const AngleKey& key) {
  require_positive(n, "n");
  if (key.angles.size() != n)
    throw ConfigurationError("kanamori key has " + std::to_string(key.angles.size()) + " angles, expected " +
                             std::to_string(n));
  validate(AuthKey{key});
  const Party alice = s.acting_as(Party::Alice);
  const Party bob = Party::Bob;

  // Eve knows neither the key nor R_A; she guesses both.
  std::vector<double> theta = key.angles;
  Bits r_a;
  if (alice == Party::Eve) {
    for (auto& t : theta) t = s.eve_rng().uniform() * kPi;
    r_a = s.eve_rng().bits(n);
  } else {
    r_a = s.party_rng().bits(n);
  }

  auto q = s.allocate(alice, n);
  encode_bits(s, alice, q, r_a);
  for (std::size_t i = 0; i < n; ++i) s.apply(alice, key_rotation(theta[i]), {q[i]});
  s.send_qubits(alice, bob, q, "kanamori.challenge");

  for (std::size_t i = 0; i < n; ++i) s.apply(bob, key_rotation(-key.angles[i]), {q[i]});
  const Bits r_a_seen = s.measure(bob, q, basis::Computational{});

  const Bits r_b = s.party_rng().bits(n);
  const AngleKey session_key = random_angle_key(n, s.party_rng());
  auto p = s.allocate(bob, n);
  encode_bits(s, bob, p, r_b);
  for (std::size_t i = 0; i < n; ++i) {
    s.apply(bob, key_rotation(session_key.angles[i]), {p[i]});
    s.apply(bob, key_rotation(key.angles[i]), {p[i]});
  }
  s.send_qubits(bob, alice, p, "kanamori.response");

  for (std::size_t i = 0; i < n; ++i) s.apply(alice, key_rotation(-theta[i]), {p[i]});
  encode_bits(s, alice, p, r_a);  // XOR with R_A
  s.send_qubits(alice, bob, p, "kanamori.confirm");

  // X Ry(a) = Ry(-a) X, so positions where R_A was 1 carry the session
  // rotation with the opposite sign.
  for (std::size_t i = 0; i < n; ++i) {
    const double a = r_a_seen[i] ? session_key.angles[i] : -session_key.angles[i];
    s.apply(bob, key_rotation(a), {p[i]});
  }
  const Bits x = s.measure(bob, p, basis::Computational{});

  Outcome out;
  out.accepted = xor_bits(x, r_a_seen) == r_b;
  out.eavesdrop_detected = !out.accepted;
  out.session_key = session_key.angles;
  return out;
}

Outcome run_zhang_li_guo(Session& s, std::size_t n, std::size_t k, Theta theta) {
  require_positive(n, "n");
  if (n > k)
    throw BudgetError("zhang_li_guo needs n <= k: " + std::to_string(n) + " rounds against a budget of " +
                      std::to_string(k) + " pairs");
  validate(AuthKey{theta});
  const Party alice = s.acting_as(Party::Alice);
  const Party bob = Party::Bob;

  const auto pairs = s.distribute_ebits(2 * k, BellKind::PhiPlus, EbitPhase::Prior, Party::Alice, Party::Bob,
                                        "zhang_li_guo.pairs");
  // (R x R)|Phi+> = |Phi+> for real orthogonal R, so the rotation leaves the
  // pairs reusable.
  for (const auto& pr : pairs) {
    if (alice == Party::Alice) s.apply(Party::Alice, key_rotation(theta.angle), {pr.first});
    s.apply(bob, key_rotation(theta.angle), {pr.second});
  }

  std::vector<double> beta(n);
  auto q = s.allocate(bob, n);
  for (std::size_t i = 0; i < n; ++i) {
    beta[i] = random_angle(s.party_rng());
    s.apply(bob, key_rotation(beta[i]), {q[i]});
  }
  s.send_qubits(bob, alice, q, "zhang_li_guo.probe");

  if (alice == Party::Eve) {
    const double guess = s.eve_rng().uniform() * kPi;
    for (Handle h : q) s.apply(alice, key_rotation(-guess), {h});
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      s.apply(alice, key_rotation(-theta.angle), {q[i]});
      s.apply(alice, gate::Cnot{}, {pairs[i].first, q[i]});
    }
  }
  s.send_qubits(alice, bob, q, "zhang_li_guo.reply");

  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    s.apply(bob, gate::Cnot{}, {pairs[i].second, q[i]});
    s.apply(bob, key_rotation(theta.angle), {q[i]});
    ok = (s.measure(bob, q[i], basis::Rotated{beta[i]}) == 0) && ok;
  }
  Outcome out;
  out.accepted = ok;
  out.eavesdrop_detected = !ok;
  return out;
}

Outcome run_li_barnum(Session& s, std::size_t n) {
  require_positive(n, "n");
  const Party alice = s.acting_as(Party::Alice);
  const Party bob = Party::Bob;

  const auto shared =
      s.distribute_ebits(n, BellKind::PhiPlus, EbitPhase::Prior, Party::Alice, Party::Bob, "li_barnum.shared");
  // Auxiliary pairs: Bob keeps y, x travels to Alice and back.
  const auto aux = s.distribute_ebits(n, BellKind::PhiPlus, EbitPhase::InProtocol, bob, alice, "li_barnum.aux");

  std::vector<Handle> xs;
  for (std::size_t i = 0; i < n; ++i) {
    if (alice == Party::Alice) s.apply(alice, gate::Cnot{}, {shared[i].first, aux[i].second});
    xs.push_back(aux[i].second);
  }
  s.send_qubits(alice, bob, xs, "li_barnum.return");

  // The two CNOTs add a XOR b, which vanishes on |Phi+>, so a legitimate
  // Alice leaves each auxiliary pair in |Phi+>.
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    s.apply(bob, gate::Cnot{}, {shared[i].second, aux[i].second});
    ok = (s.measure_bell(bob, aux[i].second, aux[i].first) == BellKind::PhiPlus) && ok;
  }
  Outcome out;
  out.accepted = ok;
  out.eavesdrop_detected = !ok;
  return out;
}

Outcome run_li_zhang(Session& s, const Bits& message) {
  require_message(message);
  refuse_data_origin_impersonation(s, "li_zhang");
  const std::size_t m = message.size();
  const auto pairs =
      s.distribute_ebits(m, BellKind::PhiPlus, EbitPhase::Prior, Party::Alice, Party::Bob, "li_zhang.pairs");

  std::vector<Handle> codeword;
  for (std::size_t i = 0; i < m; ++i) {
    const auto pq = s.allocate(Party::Alice, 2);
    prepare_bell(s, Party::Alice, pq[0], pq[1], message[i] ? BellKind::PsiMinus : BellKind::PhiPlus);
    s.apply(Party::Alice, gate::Cnot{}, {pairs[i].first, pq[0]});
    codeword.insert(codeword.end(), pq.begin(), pq.end());
  }
  s.send_qubits(Party::Alice, Party::Bob, codeword, "li_zhang.codeword");

  Outcome out;
  out.sent_message = message;
  out.accepted = true;
  for (std::size_t i = 0; i < m; ++i) {
    const Handle p = codeword[2 * i];
    const Handle q = codeword[2 * i + 1];
    s.apply(Party::Bob, gate::Cnot{}, {pairs[i].second, p});
    const BellKind k = s.measure_bell(Party::Bob, p, q);
    if (k == BellKind::PhiPlus) {
      out.recovered_message.push_back(0);
    } else if (k == BellKind::PsiMinus) {
      out.recovered_message.push_back(1);
    } else {
      out.recovered_message.push_back(0);
      out.eavesdrop_detected = true;
    }
  }
  out.accepted = !out.eavesdrop_detected;
  return out;
}

Outcome run_curty_santos(Session& s, const Bits& message) {
  require_message(message);
  refuse_data_origin_impersonation(s, "curty_santos");
  const std::size_t m = message.size();
  const auto singlets =
      s.distribute_ebits(m, qsim::kSinglet, EbitPhase::Prior, Party::Alice, Party::Bob, "curty_santos.singlets");

  // |phi_0> = |0>|+>, |phi_1> = |1>|->, each qubit XOR-ed with Alice's
  // singlet half.
  std::vector<Handle> codeword;
  for (std::size_t i = 0; i < m; ++i) {
    const auto pq = s.allocate(Party::Alice, 2);
    if (message[i]) {
      s.apply(Party::Alice, gate::X{}, {pq[0]});
      s.apply(Party::Alice, gate::X{}, {pq[1]});
    }
    s.apply(Party::Alice, gate::H{}, {pq[1]});
    s.apply(Party::Alice, gate::Cnot{}, {singlets[i].first, pq[0]});
    s.apply(Party::Alice, gate::Cnot{}, {singlets[i].first, pq[1]});
    codeword.insert(codeword.end(), pq.begin(), pq.end());
  }
  s.send_qubits(Party::Alice, Party::Bob, codeword, "curty_santos.codeword");

  Outcome out;
  out.sent_message = message;
  for (std::size_t i = 0; i < m; ++i) {
    const Handle p = codeword[2 * i];
    const Handle q = codeword[2 * i + 1];
    s.apply(Party::Bob, gate::Cnot{}, {singlets[i].second, p});
    s.apply(Party::Bob, gate::Cnot{}, {singlets[i].second, q});
    // a XOR b = 1 on the singlet.
    s.apply(Party::Bob, gate::X{}, {p});
    s.apply(Party::Bob, gate::X{}, {q});
    const auto bit = s.measure(Party::Bob, p, basis::Computational{});
    const auto check = s.measure(Party::Bob, q, basis::Diagonal{});
    out.recovered_message.push_back(bit);
    if (bit != check) out.eavesdrop_detected = true;
  }
  out.accepted = !out.eavesdrop_detected;
  return out;
}

Outcome run_zeng_guo(Session& s, std::size_t n, std::size_t sec, const BitKey& k1) {
  require_positive(n, "n");
  if (k1.bits.size() != n)
    throw ConfigurationError("zeng_guo key has " + std::to_string(k1.bits.size()) + " bits, expected " +
                             std::to_string(n));
  validate(AuthKey{k1});
  const Party alice = s.acting_as(Party::Alice);
  const Party bob = Party::Bob;

  const auto pairs =
      s.distribute_ebits(n, BellKind::PhiPlus, EbitPhase::Prior, Party::Alice, Party::Bob, "zeng_guo.pairs");
  auto measurement = [&](std::size_t i) -> qsim::Basis {
    if (k1.bits[i]) return basis::Diagonal{};
    return basis::Computational{};
  };

  // Key-expanded one-time pad: both legitimate parties derive the same
  // stream (and the check positions) from K1.
  Rng keystream(key_digest(k1.bits));
  const Bits pad_ab = keystream.bits(n);
  const Bits pad_ba = keystream.bits(n);
  const Bits pad_check = keystream.bits(sec);
  std::vector<std::size_t> check_pos(sec);
  for (auto& pos : check_pos) pos = static_cast<std::size_t>(keystream.below(n));

  Bits r_b(n);
  for (std::size_t i = 0; i < n; ++i) r_b[i] = s.measure(bob, pairs[i].second, measurement(i));

  Bits sent_ab;
  Bits r_a(n);
  if (alice == Party::Eve) {
    sent_ab = s.eve_rng().bits(n);
  } else {
    for (std::size_t i = 0; i < n; ++i) r_a[i] = s.measure(alice, pairs[i].first, measurement(i));
    sent_ab = xor_bits(r_a, pad_ab);
  }
  const Bits got_ab = s.send_classical(alice, bob, sent_ab, "zeng_guo.claim");
  const bool bob_ok = xor_bits(got_ab, pad_ab) == r_b;

  const Bits got_ba = s.send_classical(bob, alice, xor_bits(r_b, pad_ba), "zeng_guo.answer");
  bool alice_ok = xor_bits(got_ba, pad_ba) == r_a;
  if (sec > 0) {
    Bits checks(sec);
    for (std::size_t j = 0; j < sec; ++j) checks[j] = r_b[check_pos[j]] ^ pad_check[j];
    const Bits got = xor_bits(s.send_classical(bob, alice, checks, "zeng_guo.check"), pad_check);
    for (std::size_t j = 0; j < sec; ++j) alice_ok = alice_ok && got[j] == r_a[check_pos[j]];
  }
  // Eve does not verify Bob; only his decision matters then.
  if (alice == Party::Eve) alice_ok = true;

  Outcome out;
  out.accepted = bob_ok && alice_ok;
  out.eavesdrop_detected = !out.accepted;
  return out;
}

RunResult run(std::string_view id, const Params& params, std::uint64_t seed,
              const adversary::AdversaryKind& adversary) {
  const ProtocolSpec& sp = find(id);
  if (!sp.simulable)
    throw UnsupportedError(sp.id + " is accounting-only and cannot be executed; use `analyze " + sp.id +
                           "` for its declared complexity");
  if (sp.kind == AuthKind::DataOrigin && adversary::is_impersonation(adversary))
    throw UnsupportedError(sp.id + " authenticates data origin; impersonation applies to identity protocols");

  const std::size_t k = params.k == 0 ? params.n : params.k;
  const std::size_t m = params.message ? params.message->size() : params.m;
  const std::size_t largest = std::max({params.n, m, k});
  channel::SessionOptions options;
  options.capacity = std::max<std::size_t>(options.capacity, 8 * largest + 16);

  Session s = Session::open({Party::Alice, Party::Bob}, seed, options);
  s.install_adversary(adversary);
  Bits message;
  if (sp.kind == AuthKind::DataOrigin) {
    require_positive(m, "m");
    message = params.message ? *params.message : s.party_rng().bits(m);
  }

  Outcome out;
  if (id == "kanamori") {
    require_positive(params.n, "n");
    out = run_kanamori(s, params.n, random_angle_key(params.n, s.party_rng()));
  } else if (id == "zhang_li_guo") {
    out = run_zhang_li_guo(s, params.n, k, Theta{random_angle(s.party_rng())});
  } else if (id == "li_barnum") {
    out = run_li_barnum(s, params.n);
  } else if (id == "li_zhang") {
    out = run_li_zhang(s, message);
  } else if (id == "curty_santos") {
    out = run_curty_santos(s, message);
  } else {
    require_positive(params.n, "n");
    out = run_zeng_guo(s, params.n, params.s, BitKey{s.party_rng().bits(params.n)});
  }
  return {out, s.event_log(), s.eve_log(), ledger::tally(s.event_log())};
}

std::vector<ledger::GridPoint> analysis_grid() {
  std::vector<ledger::GridPoint> grid;
  for (long long n : {2, 4, 8})
    for (long long m : {2, 4, 8}) grid.push_back({n, m});
  return grid;
}

std::vector<ledger::GridPoint> analysis_holdout() { return {{16, 16}}; }

bool agrees(const ledger::ComplexityExpr& fitted, const ledger::ComplexityExpr& declared) {
  if (declared.bound == ledger::BoundKind::Exact) return fitted.same_terms(declared);
  return fitted.coeff_n == declared.coeff_n && fitted.coeff_m == declared.coeff_m &&
         fitted.constant >= declared.constant;
}

Analysis analyze(std::string_view id, const Params& base) {
  const ProtocolSpec& sp = find(id);
  Analysis a{&sp, std::nullopt, std::nullopt, std::nullopt};
  if (!sp.simulable) return a;

  const auto grid = analysis_grid();
  const auto holdout = analysis_holdout();
  auto runner = [&](ledger::GridPoint p) {
    Params params = base;
    params.n = static_cast<std::size_t>(p.n);
    params.m = static_cast<std::size_t>(p.m);
    params.k = 0;
    params.message.reset();
    return run(id, params, 0).tally;
  };
  a.fit = ledger::fit_complexity(id, grid, holdout, runner);
  a.agreement = agrees(a.fit->expr, sp.declared_complexity);
  a.model_agreement = a.fit->model == sp.declared_model;
  return a;
}

}  // namespace qauth::protocols
