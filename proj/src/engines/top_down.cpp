#include <algorithm>
#include <unordered_map>
#include <vector>

#include "engines/internal.hpp"
#include "situfact/errors.hpp"

namespace situfact::detail {

namespace {

/// Keeps each tuple only at its maximal skyline constraints.
class TopDownEngine final : public MaterializingEngine {
 public:
  TopDownEngine(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared)
      : MaterializingEngine(c, std::move(s), shared), shared_(shared) {}

  EngineKind kind() const override { return shared_ ? EngineKind::STopDown : EngineKind::TopDown; }
  const MscIndex* msc_index() const override { return &msc_; }

 protected:
  FactSet run(const Table& table) override {
    check_sequence(table);
    const TupleRecord& t = table.back();
    PrunedMatrix pm(layout_, maintained_.size());
    StagedStore st(*store_);
    StagedMsc sm(msc_);
    if (shared_) {
      root(table, pm, st, sm);
      for (std::size_t col = 0; col < maintained_.size(); ++col)
        if (col != full_col_) descend(table, col, pm, st, sm, false);
    } else {
      for (std::size_t col = 0; col < maintained_.size(); ++col) descend(table, col, pm, st, sm, true);
    }
    st.commit();
    sm.commit();
    processed_ = t.id;
    return collect_facts(t, layout_, pm, maintained_, reported_);
  }

 private:
  void settle(const TupleRecord& t, std::size_t i, std::size_t col, const StoreKey& key, PrunedMatrix& pm,
              StagedStore& st, StagedMsc& sm) {
    const std::uint32_t mask = layout_.masks()[i];
    if (pm.pruned(i, col) || !all_parents_pruned(pm, layout_, mask, col)) return;
    st.add(key, StoredTuple{t.id, t.measures});
    sm.at(t.id, maintained_[col].mask()).push_back(mask);
  }

  // r lost (mask, m) to t; it stays maximal at children t does not satisfy.
  void rehome(const Table& table, const StoredTuple& r, std::uint32_t mask, MeasureSubspace m, StagedStore& st,
              StagedMsc& sm) {
    const TupleRecord& t = table.back();
    const TupleRecord& rr = table.row(r.id);
    auto& masks = sm.at(r.id, m.mask());
    auto it = std::find(masks.begin(), masks.end(), mask);
    if (it == masks.end()) throw StoreError("MSC index out of sync for tuple " + std::to_string(r.id));
    masks.erase(it);
    if (std::popcount(mask) + 1 > layout_.dhat()) return;
    std::vector<std::uint32_t> kids;
    for (std::size_t d = 0; d < config_.dimension_count; ++d)
      if (!((mask >> d) & 1U) && rr.dims[d] != t.dims[d]) kids.push_back(mask | (1U << d));
    std::sort(kids.begin(), kids.end(), mask_key_less);
    for (std::uint32_t child : kids) {
      bool covered = std::any_of(masks.begin(), masks.end(), [&](std::uint32_t c) { return (c & ~child) == 0; });
      if (covered) continue;
      masks.push_back(child);
      st.add(store_key(rr, child, m), r);
    }
  }

  // From ⊤ downward. Plain TopDown visits every constraint; the node phase
  // of the shared variant visits only those the root phase left unpruned.
  void descend(const Table& table, std::size_t col, PrunedMatrix& pm, StagedStore& st, StagedMsc& sm,
               bool visit_all) {
    const TupleRecord& t = table.back();
    const MeasureSubspace m = maintained_[col];
    Bucket evict;
    for (int k = 0; k <= layout_.dhat(); ++k) {
      for (std::size_t i = layout_.level_begin(k); i < layout_.level_end(k); ++i) {
        if (!visit_all && pm.pruned(i, col)) continue;
        ++metrics_.traversed;
        const std::uint32_t mask = layout_.masks()[i];
        const StoreKey key = store_key(t, mask, m);
        evict.clear();
        if (!st.empty(key)) {
          for (const StoredTuple& r : st.bucket(key)) {
            ++metrics_.comparisons;
            auto o = dominates(std::span<const double>(t.measures), std::span<const double>(r.measures), m);
            if (o == DominanceOutcome::DominatedBy) pm.prune_submasks(agreement_mask(t, table.row(r.id)), col);
            else if (o == DominanceOutcome::Dominates) evict.push_back(r);
          }
        }
        for (const StoredTuple& r : evict) {
          st.remove(key, r.id);
          rehome(table, r, mask, m, st, sm);
        }
        settle(t, i, col, key, pm, st, sm);
      }
    }
  }

  // Full-space pass; one partition per resident prunes all columns.
  void root(const Table& table, PrunedMatrix& pm, StagedStore& st, StagedMsc& sm) {
    const TupleRecord& t = table.back();
    const MeasureSubspace full = maintained_[full_col_];
    std::unordered_map<TupleId, MeasurePartition> memo;
    Bucket evict;
    for (int k = 0; k <= layout_.dhat(); ++k) {
      for (std::size_t i = layout_.level_begin(k); i < layout_.level_end(k); ++i) {
        ++metrics_.traversed;
        const std::uint32_t mask = layout_.masks()[i];
        const StoreKey key = store_key(t, mask, full);
        evict.clear();
        if (!st.empty(key)) {
          for (const StoredTuple& r : st.bucket(key)) {
            auto it = memo.find(r.id);
            if (it == memo.end()) {
              ++metrics_.comparisons;
              it = memo.emplace(r.id, partition_measures(std::span<const double>(t.measures),
                                                         std::span<const double>(r.measures))).first;
            }
            const MeasurePartition& p = it->second;
            if (p.lt != 0) {
              const std::uint32_t agree = agreement_mask(t, table.row(r.id));
              for (std::size_t col = 0; col < maintained_.size(); ++col)
                if (dominated_in_subspace(p, maintained_[col])) pm.prune_submasks(agree, col);
            } else if (p.gt != 0) {
              evict.push_back(r);
            }
          }
        }
        for (const StoredTuple& r : evict) {
          st.remove(key, r.id);
          rehome(table, r, mask, full, st, sm);
        }
        settle(t, i, full_col_, key, pm, st, sm);
      }
    }
  }

  bool shared_;
  MscIndex msc_;
};

}  // namespace

std::unique_ptr<Engine> make_top_down(EngineConfig c, std::unique_ptr<SkylineStore> s, bool shared) {
  return std::make_unique<TopDownEngine>(c, std::move(s), shared);
}

}  // namespace situfact::detail
