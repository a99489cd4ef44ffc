#include "situfact/frontier.hpp"

#include <algorithm>

#include "situfact/errors.hpp"

namespace situfact {

namespace {

bool strictly_below(const Constraint& a, const Constraint& b) {
  return subsumes(a, b) == Subsumption::Subsumed;
}

}  // namespace

ConstraintSet l2_maxima(const ConstraintSet& l2) {
  ConstraintSet out;
  for (const auto& n : l2)
    if (std::none_of(l2.begin(), l2.end(), [&](const Constraint& o) { return strictly_below(n, o); }))
      out.insert(n);
  return out;
}

ConstraintSet l1_minima(const ConstraintSet& l1) {
  ConstraintSet out;
  for (const auto& n : l1)
    if (std::none_of(l1.begin(), l1.end(), [&](const Constraint& o) { return strictly_below(o, n); }))
      out.insert(n);
  return out;
}

ConstraintSet compute_frontier(const ConstraintSet& l1, const ConstraintSet& l2) {
  for (const auto& n : l1)
    if (l2.count(n)) throw PartitionError("constraint present in both L1 and L2");
  ConstraintSet l3 = l2_maxima(l2);
  const ConstraintSet maxima = l3;
  for (const auto& n : l1_minima(l1))
    if (std::none_of(maxima.begin(), maxima.end(), [&](const Constraint& x) { return strictly_below(x, n); }))
      l3.insert(n);
  return l3;
}

FrontierPartition frontier_partition(const TupleRecord& t, std::span<const TupleRecord> others,
                                     MeasureSubspace m, int dhat) {
  FrontierPartition p;
  for (auto& c : enumerate_constraints(t, dhat)) {
    bool dominated = std::any_of(others.begin(), others.end(), [&](const TupleRecord& u) {
      return satisfies(u, c) && dominates(u, t, m) == DominanceOutcome::Dominates;
    });
    (dominated ? p.l1 : p.l2).insert(std::move(c));
  }
  p.l3 = compute_frontier(p.l1, p.l2);
  return p;
}

}  // namespace situfact
