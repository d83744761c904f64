#include "qauth/register.hpp"

#include <algorithm>
#include <string>

#include "qauth/errors.hpp"

namespace qauth {

FactoredRegister::FactoredRegister(std::size_t capacity) : capacity_(capacity) {}

void FactoredRegister::check(Handle h) const {
  if (h >= where_.size()) throw IndexError("unknown qubit handle " + std::to_string(h));
}

std::vector<Handle> FactoredRegister::allocate(std::size_t count) {
  if (where_.size() + count > capacity_)
    throw CapacityError("register capacity of " + std::to_string(capacity_) + " qubits exceeded");
  std::vector<Handle> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Handle h = where_.size();
    const std::size_t id = next_block_++;
    blocks_.emplace(id, Block{qsim::StateVector(1), {h}});
    where_.push_back({id, 0});
    out.push_back(h);
  }
  return out;
}

void FactoredRegister::reindex(std::size_t block) {
  const auto& handles = blocks_.at(block).handles;
  for (std::size_t i = 0; i < handles.size(); ++i) where_[handles[i]] = {block, i};
}

std::size_t FactoredRegister::merge(std::span<const Handle> handles) {
  std::vector<std::size_t> ids;
  for (Handle h : handles) {
    check(h);
    const std::size_t b = where_[h].block;
    if (std::find(ids.begin(), ids.end(), b) == ids.end()) ids.push_back(b);
  }
  if (ids.empty()) throw ArgumentError("no qubits given");
  const std::size_t target = ids.front();
  for (std::size_t i = 1; i < ids.size(); ++i) {
    auto node = blocks_.extract(ids[i]);
    Block& base = blocks_.at(target);
    base.state = base.state.tensor(node.mapped().state);
    base.handles.insert(base.handles.end(), node.mapped().handles.begin(), node.mapped().handles.end());
  }
  reindex(target);
  return target;
}

std::vector<qsim::Qubit> FactoredRegister::locals(std::size_t block, std::span<const Handle> handles) const {
  std::vector<qsim::Qubit> out;
  out.reserve(handles.size());
  for (Handle h : handles) {
    if (where_[h].block != block) throw StateError("handle not in expected block");
    out.push_back(where_[h].local);
  }
  return out;
}

void FactoredRegister::split_off(std::size_t block, std::span<const Handle> handles) {
  Block& b = blocks_.at(block);
  if (handles.size() >= b.handles.size()) return;
  const auto qs = locals(block, handles);
  auto parts = b.state.factor(qs);
  if (!parts) return;

  std::vector<Handle> rest;
  for (Handle h : b.handles)
    if (std::find(handles.begin(), handles.end(), h) == handles.end()) rest.push_back(h);

  const std::size_t id = next_block_++;
  blocks_.emplace(id, Block{std::move(parts->first), std::vector<Handle>(handles.begin(), handles.end())});
  b.state = std::move(parts->second);
  b.handles = std::move(rest);
  reindex(id);
  reindex(block);
}

void FactoredRegister::apply(const qsim::Gate& g, std::span<const Handle> targets) {
  for (Handle h : targets) check(h);
  if (std::holds_alternative<qsim::gate::Cnot>(g)) {
    if (targets.size() != 2) throw ArgumentError("CNOT takes exactly {control, target}");
    const std::size_t block = merge(targets);
    blocks_.at(block).state.apply(g, locals(block, targets));
    return;
  }
  // Single-qubit gates never need a merge.
  for (Handle h : targets) {
    const auto [block, local] = where_[h];
    blocks_.at(block).state.apply(g, {local});
  }
}

void FactoredRegister::prepare_pair(Handle a, Handle b, qsim::BellKind kind) {
  check(a);
  check(b);
  if (a == b) throw ArgumentError("Bell pair needs two distinct qubits");
  const Handle pair[2] = {a, b};
  const std::size_t block = merge(pair);
  blocks_.at(block).state.prepare_pair(where_[a].local, where_[b].local, kind);
}

Bits FactoredRegister::measure(std::span<const Handle> targets, const qsim::Basis& basis, Rng& rng) {
  for (Handle h : targets) check(h);
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw ArgumentError("duplicate qubit handle");
  Bits out;
  out.reserve(targets.size());
  for (Handle h : targets) {
    const std::size_t block = where_[h].block;
    out.push_back(blocks_.at(block).state.measure(where_[h].local, basis, rng));
    const Handle one[1] = {h};
    split_off(block, one);
  }
  return out;
}

qsim::BellKind FactoredRegister::measure_bell(Handle a, Handle b, Rng& rng) {
  check(a);
  check(b);
  if (a == b) throw ArgumentError("Bell measurement needs two distinct qubits");
  const Handle pair[2] = {a, b};
  const std::size_t block = merge(pair);
  const auto kind = blocks_.at(block).state.measure_bell(where_[a].local, where_[b].local, rng);
  split_off(block, pair);
  return kind;
}

std::optional<qsim::StateVector> FactoredRegister::isolate(std::span<const Handle> handles) {
  const std::size_t block = merge(handles);
  split_off(block, handles);
  const std::size_t now = where_[handles.front()].block;
  const Block& b = blocks_.at(now);
  if (b.handles.size() != handles.size()) return std::nullopt;
  return b.state.permuted(locals(now, handles));
}

std::size_t FactoredRegister::block_size(Handle h) const {
  check(h);
  return blocks_.at(where_[h].block).handles.size();
}

}  // namespace qauth
