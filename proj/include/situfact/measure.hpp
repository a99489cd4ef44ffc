#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "situfact/schema.hpp"

namespace situfact {

/// Non-empty subset of measure attributes, bit i = measure attribute i.
class MeasureSubspace {
 public:
  explicit MeasureSubspace(std::uint32_t mask);

  static MeasureSubspace full(std::size_t measure_count);

  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept { return std::popcount(mask_); }
  bool contains(std::size_t attr) const noexcept { return (mask_ >> attr) & 1U; }

  friend bool operator==(MeasureSubspace, MeasureSubspace) = default;
  friend auto operator<=>(MeasureSubspace a, MeasureSubspace b) { return a.mask_ <=> b.mask_; }

 private:
  std::uint32_t mask_;
};

/// All non-empty subspaces with at most `max_size` attributes, ascending by mask.
std::vector<MeasureSubspace> enumerate_subspaces(std::size_t measure_count, int max_size);

enum class DominanceOutcome { Dominates, DominatedBy, Equal, Incomparable };

/// Outcome of t against u on M, larger-is-better.
DominanceOutcome dominates(std::span<const double> t, std::span<const double> u, MeasureSubspace m);
DominanceOutcome dominates(const TupleRecord& t, const TupleRecord& u, MeasureSubspace m);

/// gt: t > u, lt: t < u, eq: t == u, per attribute.
struct MeasurePartition {
  std::uint32_t gt = 0;
  std::uint32_t lt = 0;
  std::uint32_t eq = 0;

  friend bool operator==(const MeasurePartition&, const MeasurePartition&) = default;
};

MeasurePartition partition_measures(std::span<const double> t, std::span<const double> u);
MeasurePartition partition_measures(const TupleRecord& t, const TupleRecord& u);

/// True iff the tuple the partition was taken from is dominated in `m`:
/// m meets lt and misses gt.
inline bool dominated_in_subspace(const MeasurePartition& p, MeasureSubspace m) noexcept {
  return (m.mask() & p.lt) != 0 && (m.mask() & p.gt) == 0;
}

}  // namespace situfact
