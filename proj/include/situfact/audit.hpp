#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "situfact/engine.hpp"

namespace situfact {

/// Recomputes the expected bucket contents of a materializing engine and
/// diffs them against its store. Pairwise dominance never changes in an
/// append-only table, so only the new tuple's pairs are computed per step.
class InvariantAuditor {
 public:
  InvariantAuditor(EngineConfig config, std::vector<MeasureSubspace> subspaces);

  /// Call once per appended row, in order.
  void observe(const Table& table);

  bool is_skyline(TupleId u, std::size_t subspace_index, std::uint32_t mask) const;
  bool is_maximal(TupleId u, std::size_t subspace_index, std::uint32_t mask) const;

  /// Human-readable violations; empty when the engine's invariant holds.
  std::vector<std::string> audit(const Engine& engine, const Table& table) const;

 private:
  bool expected(StorageFamily family, TupleId u, std::size_t si, std::uint32_t mask) const;

  EngineConfig config_;
  std::vector<MeasureSubspace> subspaces_;
  // [tuple - 1][subspace] -> maximal agreement masks of dominating tuples
  std::vector<std::vector<std::vector<std::uint32_t>>> dominators_;
};

}  // namespace situfact
