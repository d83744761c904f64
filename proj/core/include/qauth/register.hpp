#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qauth/qsim.hpp"

namespace qauth {

using Handle = std::size_t;

/// A register of arbitrarily many qubits stored as independent dense
/// blocks. Blocks are merged when an operation spans them and measured
/// qubits are split back out when they factor, so protocols that act
/// position-by-position never hold more than a few qubits per block.
/// Each block obeys the StateVector cap of qsim::kMaxQubits.
class FactoredRegister {
 public:
  explicit FactoredRegister(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return where_.size(); }

  /// Fresh qubits in |0>.
  std::vector<Handle> allocate(std::size_t count);

  void apply(const qsim::Gate& g, std::span<const Handle> targets);
  void prepare_pair(Handle a, Handle b, qsim::BellKind kind);
  Bits measure(std::span<const Handle> targets, const qsim::Basis& b, Rng& rng);
  qsim::BellKind measure_bell(Handle a, Handle b, Rng& rng);

  /// Pure state of exactly `handles` (in the given order) when they are
  /// unentangled from every other qubit; nullopt otherwise.
  std::optional<qsim::StateVector> isolate(std::span<const Handle> handles);

  /// Number of qubits in the block that currently holds `h`.
  std::size_t block_size(Handle h) const;
  std::size_t block_count() const { return blocks_.size(); }

 private:
  struct Block {
    qsim::StateVector state;
    std::vector<Handle> handles;  // handles[i] is local qubit i
  };
  struct Location {
    std::size_t block;
    qsim::Qubit local;
  };

  void check(Handle h) const;
  std::size_t merge(std::span<const Handle> handles);
  std::vector<qsim::Qubit> locals(std::size_t block, std::span<const Handle> handles) const;
  void split_off(std::size_t block, std::span<const Handle> handles);
  void reindex(std::size_t block);

  std::size_t capacity_;
  std::size_t next_block_ = 0;
  std::map<std::size_t, Block> blocks_;
  std::vector<Location> where_;
};

}  // namespace qauth
