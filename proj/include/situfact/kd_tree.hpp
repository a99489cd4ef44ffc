#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "situfact/measure.hpp"
#include "situfact/schema.hpp"

namespace situfact {

/// k-d tree over full-space measure vectors, grown by plain insertion.
class DominanceIndex {
 public:
  explicit DominanceIndex(std::size_t dims) : dims_(dims) {}

  void insert(TupleId id, std::span<const double> point);
  /// Ids of points p with p[i] >= t[i] for every i in `m`; other coordinates
  /// are unconstrained.
  void query(std::span<const double> t, MeasureSubspace m, std::vector<TupleId>& out) const;

  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t dims() const noexcept { return dims_; }

 private:
  struct Node {
    TupleId id;
    std::uint32_t axis;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::size_t dims_;
  std::vector<Node> nodes_;
  std::vector<double> coords_;  // nodes_.size() × dims_
};

}  // namespace situfact
