#include "situfact/kd_tree.hpp"

#include "situfact/errors.hpp"

namespace situfact {

void DominanceIndex::insert(TupleId id, std::span<const double> point) {
  if (point.size() != dims_) throw SchemaError("k-d tree point has wrong arity");
  const auto idx = static_cast<std::int32_t>(nodes_.size());
  coords_.insert(coords_.end(), point.begin(), point.end());
  if (nodes_.empty()) {
    nodes_.push_back(Node{id, 0});
    return;
  }
  std::int32_t cur = 0;
  std::uint32_t depth = 0;
  for (;;) {
    Node& n = nodes_[static_cast<std::size_t>(cur)];
    const double split = coords_[static_cast<std::size_t>(cur) * dims_ + n.axis];
    std::int32_t& next = point[n.axis] < split ? n.left : n.right;
    ++depth;
    if (next < 0) {
      next = idx;
      break;
    }
    cur = next;
  }
  nodes_.push_back(Node{id, static_cast<std::uint32_t>(depth % dims_)});
}

void DominanceIndex::query(std::span<const double> t, MeasureSubspace m, std::vector<TupleId>& out) const {
  if (nodes_.empty()) return;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const auto cur = static_cast<std::size_t>(stack.back());
    stack.pop_back();
    const Node& n = nodes_[cur];
    const double* p = &coords_[cur * dims_];
    bool inside = true;
    for (std::uint32_t bits = m.mask(); bits && inside; bits &= bits - 1) {
      auto i = static_cast<std::size_t>(std::countr_zero(bits));
      inside = p[i] >= t[i];
    }
    if (inside) out.push_back(n.id);
    if (n.right >= 0) stack.push_back(n.right);
    // left holds values below the split; useless once the split is at or under the bound
    if (n.left >= 0 && !(m.contains(n.axis) && p[n.axis] <= t[n.axis])) stack.push_back(n.left);
  }
}

}  // namespace situfact
