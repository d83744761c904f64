#include "qauth/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qauth/errors.hpp"

namespace qauth::qsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_distinct(std::span<const Qubit> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i)
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      if (qubits[i] == qubits[j])
        throw ArgumentError("duplicate qubit index " + std::to_string(qubits[i]));
}

}  // namespace

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus: return "PhiPlus";
    case BellKind::PhiMinus: return "PhiMinus";
    case BellKind::PsiPlus: return "PsiPlus";
    case BellKind::PsiMinus: return "PsiMinus";
  }
  return "?";
}

double basis_angle(const Basis& b) {
  return std::visit(Overloaded{
                        [](const basis::Computational&) { return 0.0; },
                        [](const basis::Rotated& r) { return r.theta; },
                        [](const basis::Diagonal&) { return std::numbers::pi / 4; },
                    },
                    b);
}

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0 || num_qubits > kMaxQubits)
    throw InvalidSizeError("register size must be in [1, " + std::to_string(kMaxQubits) +
                           "], got " + std::to_string(num_qubits));
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  const std::size_t dim = amplitudes.size();
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw InvalidSizeError("amplitude count must be a power of two >= 2");
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  if (n > kMaxQubits) throw InvalidSizeError("register exceeds the qubit cap");
  double sq = 0.0;
  for (const auto& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ArgumentError("non-finite amplitude");
    sq += std::norm(a);
  }
  if (std::abs(std::sqrt(sq) - 1.0) > kNormTolerance) throw ArgumentError("state is not normalized");
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& a : amplitudes_) sq += std::norm(a);
  return std::sqrt(sq);
}

void StateVector::check_index(Qubit q) const {
  if (q >= num_qubits_)
    throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                     std::to_string(num_qubits_) + "-qubit register");
}

void StateVector::apply_single(Qubit q, const Amplitude (&m)[2][2]) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i & bit) continue;
    const Amplitude a0 = amplitudes_[i];
    const Amplitude a1 = amplitudes_[i | bit];
    amplitudes_[i] = m[0][0] * a0 + m[0][1] * a1;
    amplitudes_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void StateVector::apply_cnot(Qubit control, Qubit target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(amplitudes_[i], amplitudes_[i | tbit]);
}

void StateVector::apply(const Gate& g, std::span<const Qubit> targets) {
  for (Qubit q : targets) check_index(q);
  require_distinct(targets);

  if (std::holds_alternative<gate::Cnot>(g)) {
    if (targets.size() != 2) throw ArgumentError("CNOT takes exactly {control, target}");
    apply_cnot(targets[0], targets[1]);
    return;
  }

  Amplitude m[2][2];
  std::visit(Overloaded{
                 [&](const gate::X&) {
                   m[0][0] = 0.0; m[0][1] = 1.0;
                   m[1][0] = 1.0; m[1][1] = 0.0;
                 },
                 [&](const gate::Z&) {
                   m[0][0] = 1.0; m[0][1] = 0.0;
                   m[1][0] = 0.0; m[1][1] = -1.0;
                 },
                 [&](const gate::H&) {
                   m[0][0] = kInvSqrt2; m[0][1] = kInvSqrt2;
                   m[1][0] = kInvSqrt2; m[1][1] = -kInvSqrt2;
                 },
                 [&](const gate::Ry& r) {
                   if (!std::isfinite(r.theta)) throw ArgumentError("Ry angle must be finite");
                   const double c = std::cos(r.theta / 2), s = std::sin(r.theta / 2);
                   m[0][0] = c; m[0][1] = -s;
                   m[1][0] = s; m[1][1] = c;
                 },
                 [](const gate::Cnot&) {},
             },
             g);
  for (Qubit q : targets) apply_single(q, m);
}

void StateVector::prepare_pair(Qubit a, Qubit b, BellKind kind) {
  check_index(a);
  check_index(b);
  if (a == b) throw ArgumentError("Bell pair needs two distinct qubits");
  if (probability_of_one(a) > kProbabilityFloor || probability_of_one(b) > kProbabilityFloor)
    throw ArgumentError("Bell pair qubits must start in |0>");

  if (kind == BellKind::PhiMinus || kind == BellKind::PsiMinus) apply(gate::X{}, {a});
  apply(gate::H{}, {a});
  apply_cnot(a, b);
  if (kind == BellKind::PsiPlus || kind == BellKind::PsiMinus) apply(gate::X{}, {b});
}

double StateVector::probability_of_one(Qubit q) const {
  check_index(q);
  const std::size_t bit = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
    if (i & bit) p += std::norm(amplitudes_[i]);
  return p;
}

std::uint8_t StateVector::measure_computational(Qubit q, Rng& rng) {
  const double p1 = probability_of_one(q);
  const double p0 = 1.0 - p1;
  std::uint8_t outcome;
  if (p1 < kProbabilityFloor) {
    outcome = 0;
  } else if (p0 < kProbabilityFloor) {
    outcome = 1;
  } else {
    outcome = rng.uniform() < p0 ? 0 : 1;
  }
  const std::size_t bit = std::size_t{1} << q;
  double kept = 0.0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (((i & bit) != 0) != (outcome == 1)) {
      amplitudes_[i] = 0.0;
    } else {
      kept += std::norm(amplitudes_[i]);
    }
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amplitudes_) a *= scale;
  return outcome;
}

std::uint8_t StateVector::measure(Qubit target, const Basis& b, Rng& rng) {
  check_index(target);
  const double angle = basis_angle(b);
  if (angle == 0.0) return measure_computational(target, rng);
  apply(gate::Ry{-kKeyAngleScale * angle}, {target});
  const std::uint8_t bit = measure_computational(target, rng);
  apply(gate::Ry{kKeyAngleScale * angle}, {target});
  return bit;
}

Bits StateVector::measure(std::span<const Qubit> targets, const Basis& b, Rng& rng) {
  for (Qubit q : targets) check_index(q);
  require_distinct(targets);
  Bits out;
  out.reserve(targets.size());
  for (Qubit q : targets) out.push_back(measure(q, b, rng));
  return out;
}

BellKind StateVector::measure_bell(Qubit a, Qubit b, Rng& rng) {
  check_index(a);
  check_index(b);
  if (a == b) throw ArgumentError("Bell measurement needs two distinct qubits");
  // Rotate the Bell basis onto the computational basis, read both bits, rotate back.
  apply_cnot(a, b);
  apply(gate::H{}, {a});
  const std::uint8_t phase = measure_computational(a, rng);
  const std::uint8_t parity = measure_computational(b, rng);
  apply(gate::H{}, {a});
  apply_cnot(a, b);
  if (parity == 0) return phase == 0 ? BellKind::PhiPlus : BellKind::PhiMinus;
  return phase == 0 ? BellKind::PsiPlus : BellKind::PsiMinus;
}

StateVector StateVector::tensor(const StateVector& high) const {
  const std::size_t n = num_qubits_ + high.num_qubits_;
  if (n > kMaxQubits) throw CapacityError("combined register exceeds the qubit cap");
  std::vector<Amplitude> out(std::size_t{1} << n);
  const std::size_t low_dim = amplitudes_.size();
  for (std::size_t h = 0; h < high.amplitudes_.size(); ++h) {
    if (high.amplitudes_[h] == Amplitude{}) continue;
    for (std::size_t l = 0; l < low_dim; ++l) out[h * low_dim + l] = high.amplitudes_[h] * amplitudes_[l];
  }
  return StateVector(n, std::move(out));
}

StateVector StateVector::permuted(std::span<const Qubit> order) const {
  if (order.size() != num_qubits_) throw ArgumentError("permutation size mismatch");
  for (Qubit q : order) check_index(q);
  require_distinct(order);
  std::vector<Amplitude> out(amplitudes_.size());
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      if (i & (std::size_t{1} << order[k])) j |= std::size_t{1} << k;
    out[j] = amplitudes_[i];
  }
  return StateVector(num_qubits_, std::move(out));
}

std::optional<std::pair<StateVector, StateVector>> StateVector::factor(
    std::span<const Qubit> subset) const {
  for (Qubit q : subset) check_index(q);
  require_distinct(subset);
  if (subset.empty() || subset.size() >= num_qubits_)
    throw ArgumentError("factor needs a proper, non-empty subset");

  std::vector<Qubit> order(subset.begin(), subset.end());
  for (Qubit q = 0; q < num_qubits_; ++q)
    if (std::find(subset.begin(), subset.end(), q) == subset.end()) order.push_back(q);
  // After permuting, the subset occupies the low bits: M(row = low, col = high).
  const StateVector p = permuted(order);
  const std::size_t rows = std::size_t{1} << subset.size();
  const std::size_t cols = p.amplitudes_.size() / rows;
  auto at = [&](std::size_t r, std::size_t c) { return p.amplitudes_[c * rows + r]; };

  std::size_t best = 0;
  double best_norm = -1.0;
  for (std::size_t c = 0; c < cols; ++c) {
    double sq = 0.0;
    for (std::size_t r = 0; r < rows; ++r) sq += std::norm(at(r, c));
    if (sq > best_norm) {
      best_norm = sq;
      best = c;
    }
  }
  std::vector<Amplitude> u(rows);
  const double inv = 1.0 / std::sqrt(best_norm);
  for (std::size_t r = 0; r < rows; ++r) u[r] = at(r, best) * inv;
  std::vector<Amplitude> v(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Amplitude acc{};
    for (std::size_t r = 0; r < rows; ++r) acc += std::conj(u[r]) * at(r, c);
    v[c] = acc;
  }
  double residual = 0.0;
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) residual += std::norm(at(r, c) - u[r] * v[c]);
  if (residual > kNormTolerance * kNormTolerance) return std::nullopt;

  double vn = 0.0;
  for (const auto& a : v) vn += std::norm(a);
  const double vscale = 1.0 / std::sqrt(vn);
  for (auto& a : v) a *= vscale;
  return std::make_pair(StateVector(subset.size(), std::move(u)),
                        StateVector(num_qubits_ - subset.size(), std::move(v)));
}

StateVector new_register(std::size_t n) { return StateVector(n); }

StateVector bell_state(BellKind kind) {
  StateVector s(2);
  s.prepare_pair(0, 1, kind);
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("fidelity of registers with different sizes");
  Amplitude overlap{};
  for (std::size_t i = 0; i < a.dimension(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

}  // namespace qauth::qsim
