#include <unordered_map>
#include <vector>

#include "engines/internal.hpp"

namespace situfact::detail {

namespace {

/// Keeps every skyline tuple of every context.
class BottomUpEngine final : public MaterializingEngine {
 public:
  BottomUpEngine(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared)
      : MaterializingEngine(c, std::move(s), false), shared_(shared) {}

  EngineKind kind() const override { return shared_ ? EngineKind::SBottomUp : EngineKind::BottomUp; }

 protected:
  FactSet run(const Table& table) override {
    check_sequence(table);
    const TupleRecord& t = table.back();
    PrunedMatrix pm(layout_, maintained_.size());
    StagedStore st(*store_);
    if (shared_) {
      memo_.clear();
      if (full_col_ < maintained_.size()) root(table, pm, st);
      for (std::size_t col = 0; col < maintained_.size(); ++col)
        if (col != full_col_) climb(table, col, pm, st);
    } else {
      for (std::size_t col = 0; col < maintained_.size(); ++col) climb(table, col, pm, st);
    }
    st.commit();
    processed_ = t.id;
    return collect_facts(t, layout_, pm, maintained_, reported_);
  }

 private:
  const MeasurePartition& partition(const TupleRecord& t, const StoredTuple& r) {
    auto it = memo_.find(r.id);
    if (it == memo_.end()) {
      ++metrics_.comparisons;
      it = memo_.emplace(r.id, partition_measures(std::span<const double>(t.measures),
                                                  std::span<const double>(r.measures))).first;
    }
    return it->second;
  }

  // one partition settles every subspace
  void prune_where_dominated(const MeasurePartition& p, std::uint32_t agree, PrunedMatrix& pm) {
    for (std::size_t col = 0; col < maintained_.size(); ++col)
      if (dominated_in_subspace(p, maintained_[col])) pm.prune_submasks(agree, col);
  }

  // From ⊥ upward; the first dominator in a bucket settles the constraint.
  // Shared mode also prunes the other columns from each partition it computes.
  void climb(const Table& table, std::size_t col, PrunedMatrix& pm, StagedStore& st) {
    const TupleRecord& t = table.back();
    const MeasureSubspace m = maintained_[col];
    std::vector<TupleId> evict;
    for (int k = layout_.dhat(); k >= 0; --k) {
      for (std::size_t i = layout_.level_begin(k); i < layout_.level_end(k); ++i) {
        if (pm.pruned(i, col)) continue;
        ++metrics_.traversed;
        const StoreKey key = store_key(t, layout_.masks()[i], m);
        bool dominated = false;
        evict.clear();
        if (!st.empty(key)) {
          for (const StoredTuple& r : st.bucket(key)) {
            DominanceOutcome o;
            if (shared_) {
              const MeasurePartition& p = partition(t, r);
              if (p.lt != 0) prune_where_dominated(p, agreement_mask(t, table.row(r.id)), pm);
              o = dominated_in_subspace(p, m)                                   ? DominanceOutcome::DominatedBy
                  : (p.gt & m.mask()) != 0 && (p.lt & m.mask()) == 0 ? DominanceOutcome::Dominates
                                                                     : DominanceOutcome::Incomparable;
            } else {
              ++metrics_.comparisons;
              o = dominates(std::span<const double>(t.measures), std::span<const double>(r.measures), m);
            }
            if (o == DominanceOutcome::DominatedBy) {
              if (!shared_) pm.prune_submasks(agreement_mask(t, table.row(r.id)), col);
              dominated = true;
              break;
            }
            if (o == DominanceOutcome::Dominates) evict.push_back(r.id);
          }
        }
        if (dominated) continue;
        for (TupleId id : evict) st.remove(key, id);
        st.add(key, StoredTuple{t.id, t.measures});
      }
    }
  }

  // Full-space pass: compares every resident so the partitions reach all columns.
  void root(const Table& table, PrunedMatrix& pm, StagedStore& st) {
    const TupleRecord& t = table.back();
    const MeasureSubspace full = maintained_[full_col_];
    std::vector<TupleId> evict;
    for (int k = layout_.dhat(); k >= 0; --k) {
      for (std::size_t i = layout_.level_begin(k); i < layout_.level_end(k); ++i) {
        if (pm.pruned(i, full_col_)) continue;
        ++metrics_.traversed;
        const StoreKey key = store_key(t, layout_.masks()[i], full);
        evict.clear();
        if (!st.empty(key)) {
          for (const StoredTuple& r : st.bucket(key)) {
            const MeasurePartition& p = partition(t, r);
            if (p.lt != 0) prune_where_dominated(p, agreement_mask(t, table.row(r.id)), pm);
            else if (p.gt != 0) evict.push_back(r.id);
          }
        }
        if (pm.pruned(i, full_col_)) continue;
        for (TupleId id : evict) st.remove(key, id);
        st.add(key, StoredTuple{t.id, t.measures});
      }
    }
  }

  bool shared_;
  std::unordered_map<TupleId, MeasurePartition> memo_;
};

}  // namespace

std::unique_ptr<Engine> make_bottom_up(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared) {
  return std::make_unique<BottomUpEngine>(c, std::move(s), shared);
}

}  // namespace situfact::detail
