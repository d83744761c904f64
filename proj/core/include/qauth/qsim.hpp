#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qauth/rng.hpp"

/// Minimal pure-state simulator. Qubit q of an n-qubit register is bit q
/// of the amplitude index (qubit 0 is the least significant bit).
namespace qauth::qsim {

using Amplitude = std::complex<double>;
using Qubit = std::size_t;

inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;
/// Outcome probabilities below this are treated as impossible.
inline constexpr double kProbabilityFloor = 1e-12;

/// Protocol key angles live in [0, pi) and are applied as Ry(kKeyAngleScale
/// * angle), so the whole key range maps onto distinguishable real states.
/// The same convention defines Rotated(theta) measurement bases.
inline constexpr double kKeyAngleScale = 2.0;

namespace gate {
struct X {};
struct Z {};
struct H {};
/// Ry(theta)|0> = cos(theta/2)|0> + sin(theta/2)|1>.
struct Ry {
  double theta = 0.0;
};
/// Targets are {control, target}.
struct Cnot {};
}  // namespace gate

using Gate = std::variant<gate::X, gate::Z, gate::H, gate::Ry, gate::Cnot>;

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
inline constexpr BellKind kSinglet = BellKind::PsiMinus;

std::string_view to_string(BellKind kind);

namespace basis {
struct Computational {};
/// Basis {Ry(2 theta)|0>, Ry(2 theta)|1>}; theta uses the key-angle convention.
struct Rotated {
  double theta = 0.0;
};
/// Equivalent to Rotated(pi/4): {|+>, |->}.
struct Diagonal {};
}  // namespace basis

using Basis = std::variant<basis::Computational, basis::Rotated, basis::Diagonal>;

/// Key-angle of the basis (0 for Computational, pi/4 for Diagonal).
double basis_angle(const Basis& b);

class StateVector {
 public:
  /// |0...0> on num_qubits qubits; 1 <= num_qubits <= kMaxQubits.
  explicit StateVector(std::size_t num_qubits);

  /// Takes ownership of explicit amplitudes. The length must be a power of
  /// two and the norm must be 1 within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }

  double norm() const;

  void apply(const Gate& g, std::span<const Qubit> targets);
  void apply(const Gate& g, std::initializer_list<Qubit> targets) {
    apply(g, std::span<const Qubit>(targets.begin(), targets.size()));
  }

  /// Puts two qubits that are currently |0> (and unentangled) into a Bell state.
  void prepare_pair(Qubit a, Qubit b, BellKind kind);

  /// Projective measurement of each target in the given basis, in order.
  /// The state collapses and is renormalized.
  Bits measure(std::span<const Qubit> targets, const Basis& b, Rng& rng);
  std::uint8_t measure(Qubit target, const Basis& b, Rng& rng);

  /// Bell-basis measurement on (a, b); the pair collapses onto the outcome.
  BellKind measure_bell(Qubit a, Qubit b, Rng& rng);

  double probability_of_one(Qubit q) const;

  /// Kronecker product with `high` placed on the qubits above this register.
  StateVector tensor(const StateVector& high) const;

  /// If `subset` (a proper, non-empty subset) is unentangled from the other
  /// qubits, returns (state of subset in the given order, state of the rest
  /// in ascending qubit order).
  std::optional<std::pair<StateVector, StateVector>> factor(std::span<const Qubit> subset) const;

  /// Same register with qubits permuted: new qubit i is old qubit order[i].
  StateVector permuted(std::span<const Qubit> order) const;

 private:
  StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

  void check_index(Qubit q) const;
  void apply_single(Qubit q, const Amplitude (&m)[2][2]);
  void apply_cnot(Qubit control, Qubit target);
  std::uint8_t measure_computational(Qubit q, Rng& rng);

  std::size_t num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

StateVector new_register(std::size_t n);

/// Two-qubit Bell state with qubit 0 as the first member of the pair.
StateVector bell_state(BellKind kind);

/// |<a|b>|^2 for registers of equal size.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace qauth::qsim
