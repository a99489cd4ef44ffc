#pragma once

#include <set>
#include <span>

#include "situfact/constraint.hpp"
#include "situfact/measure.hpp"

namespace situfact {

using ConstraintSet = std::set<Constraint>;

struct FrontierPartition {
  ConstraintSet l1;  // t not in the contextual skyline
  ConstraintSet l2;  // t in the contextual skyline
  ConstraintSet l3;  // frontier
};

/// L2 nodes with no strictly more general L2 node.
ConstraintSet l2_maxima(const ConstraintSet& l2);
/// L1 nodes with no strictly more specific L1 node.
ConstraintSet l1_minima(const ConstraintSet& l1);

/// L2Maxima plus every minimal L1 node that has no L2 maximum beneath it.
/// Throws PartitionError when l1 and l2 overlap.
ConstraintSet compute_frontier(const ConstraintSet& l1, const ConstraintSet& l2);

/// Splits the capped lattice of `t` by contextual-skyline membership against
/// `others` in subspace `m`, then fills l3.
FrontierPartition frontier_partition(const TupleRecord& t, std::span<const TupleRecord> others,
                                     MeasureSubspace m, int dhat);

}  // namespace situfact
