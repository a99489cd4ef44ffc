#include "situfact/measure.hpp"

#include "situfact/errors.hpp"

namespace situfact {

MeasureSubspace::MeasureSubspace(std::uint32_t mask) : mask_(mask) {
  if (mask == 0) throw SchemaError("measure subspace must be non-empty");
}

MeasureSubspace MeasureSubspace::full(std::size_t measure_count) {
  return MeasureSubspace(static_cast<std::uint32_t>((1ULL << measure_count) - 1));
}

std::vector<MeasureSubspace> enumerate_subspaces(std::size_t measure_count, int max_size) {
  std::vector<MeasureSubspace> out;
  const std::uint32_t limit = static_cast<std::uint32_t>(1ULL << measure_count);
  for (std::uint32_t m = 1; m < limit; ++m)
    if (std::popcount(m) <= max_size) out.emplace_back(m);
  return out;
}

DominanceOutcome dominates(std::span<const double> t, std::span<const double> u, MeasureSubspace m) {
  bool better = false, worse = false;
  for (std::uint32_t bits = m.mask(); bits; bits &= bits - 1) {
    std::size_t i = static_cast<std::size_t>(std::countr_zero(bits));
    if (t[i] > u[i]) better = true;
    else if (t[i] < u[i]) worse = true;
    if (better && worse) return DominanceOutcome::Incomparable;
  }
  if (better) return DominanceOutcome::Dominates;
  if (worse) return DominanceOutcome::DominatedBy;
  return DominanceOutcome::Equal;
}

DominanceOutcome dominates(const TupleRecord& t, const TupleRecord& u, MeasureSubspace m) {
  return dominates(std::span<const double>(t.measures), std::span<const double>(u.measures), m);
}

MeasurePartition partition_measures(std::span<const double> t, std::span<const double> u) {
  MeasurePartition p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::uint32_t bit = 1U << i;
    if (t[i] > u[i]) p.gt |= bit;
    else if (t[i] < u[i]) p.lt |= bit;
    else p.eq |= bit;
  }
  return p;
}

MeasurePartition partition_measures(const TupleRecord& t, const TupleRecord& u) {
  return partition_measures(std::span<const double>(t.measures), std::span<const double>(u.measures));
}

}  // namespace situfact
