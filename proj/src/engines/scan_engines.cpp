#include <vector>

#include "engines/internal.hpp"
#include "situfact/kd_tree.hpp"

namespace situfact::detail {

namespace {

/// Definitional oracle: every (C, M) checked against every earlier tuple.
class BruteEngine final : public Engine {
 public:
  using Engine::Engine;
  EngineKind kind() const override { return EngineKind::Brute; }

 protected:
  FactSet run(const Table& table) override {
    const TupleRecord& t = table.back();
    const auto history = table.history();
    FactSet out;
    const auto lattice = enumerate_constraints(t, config_.dhat);
    for (MeasureSubspace m : subspaces_) {
      for (const Constraint& c : lattice) {
        ++metrics_.traversed;
        bool dominated = false;
        for (const TupleRecord& u : history) {
          if (!satisfies(u, c)) continue;
          ++metrics_.comparisons;
          if (dominates(u, t, m) == DominanceOutcome::Dominates) {
            dominated = true;
            break;
          }
        }
        if (!dominated) out.push_back(Fact{c, m});
      }
    }
    return out;
  }
};

/// Starts from the whole lattice and strikes 𝓒^{t,u} for each dominator u.
class BaselineEngine : public Engine {
 public:
  explicit BaselineEngine(EngineConfig c)
      : Engine(c), layout_(static_cast<int>(c.dimension_count), c.dhat) {}

 protected:
  virtual void dominators(const Table& table, MeasureSubspace m, std::vector<const TupleRecord*>& out) = 0;
  virtual void finish(const Table&) {}

  FactSet run(const Table& table) override {
    const TupleRecord& t = table.back();
    PrunedMatrix pm(layout_, subspaces_.size());
    std::vector<const TupleRecord*> hits;
    for (std::size_t col = 0; col < subspaces_.size(); ++col) {
      hits.clear();
      dominators(table, subspaces_[col], hits);
      for (const TupleRecord* u : hits) pm.prune_submasks(agreement_mask(t, *u), col);
      metrics_.traversed += layout_.size();
    }
    finish(table);
    return collect_facts(t, layout_, pm, subspaces_, std::vector<bool>(subspaces_.size(), true));
  }

  LatticeLayout layout_;
};

class BaselineSeqEngine final : public BaselineEngine {
 public:
  using BaselineEngine::BaselineEngine;
  EngineKind kind() const override { return EngineKind::BaselineSeq; }

 protected:
  void dominators(const Table& table, MeasureSubspace m, std::vector<const TupleRecord*>& out) override {
    const TupleRecord& t = table.back();
    for (const TupleRecord& u : table.history()) {
      ++metrics_.comparisons;
      if (dominates(u, t, m) == DominanceOutcome::Dominates) out.push_back(&u);
    }
  }
};

class BaselineIdxEngine final : public BaselineEngine {
 public:
  explicit BaselineIdxEngine(EngineConfig c) : BaselineEngine(c), tree_(c.measure_count) {}
  EngineKind kind() const override { return EngineKind::BaselineIdx; }

 protected:
  void dominators(const Table& table, MeasureSubspace m, std::vector<const TupleRecord*>& out) override {
    // catch up if rows were appended without a discover() call
    while (tree_.size() + 1 < table.size()) {
      const TupleRecord& r = table.rows()[tree_.size()];
      tree_.insert(r.id, r.measures);
    }
    const TupleRecord& t = table.back();
    ids_.clear();
    tree_.query(t.measures, m, ids_);
    for (TupleId id : ids_) {
      const TupleRecord& u = table.row(id);
      ++metrics_.comparisons;
      if (dominates(u, t, m) == DominanceOutcome::Dominates) out.push_back(&u);
    }
  }

  void finish(const Table& table) override {
    if (tree_.size() + 1 == table.size()) tree_.insert(table.back().id, table.back().measures);
  }

 private:
  DominanceIndex tree_;
  std::vector<TupleId> ids_;
};

}  // namespace

std::unique_ptr<Engine> make_brute(EngineConfig c) { return std::make_unique<BruteEngine>(c); }
std::unique_ptr<Engine> make_baseline_seq(EngineConfig c) { return std::make_unique<BaselineSeqEngine>(c); }
std::unique_ptr<Engine> make_baseline_idx(EngineConfig c) { return std::make_unique<BaselineIdxEngine>(c); }

}  // namespace situfact::detail
