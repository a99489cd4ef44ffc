#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "situfact/engine.hpp"
#include "situfact/prominence.hpp"
#include "situfact/schema.hpp"
#include "situfact/store.hpp"

namespace situfact {

struct TupleResult {
  TupleId id = 0;
  FactSet facts;
  std::vector<ScoredFact> scored;  // ranked
  EngineMetrics metrics;
};

/// Intern, normalize, append, discover, score.
class Discoverer {
 public:
  Discoverer(Schema schema, EngineKind engine, int dhat, int mhat,
             std::unique_ptr<SkylineStore> store = nullptr);

  TupleResult append(std::span<const std::string> dims, std::span<const double> raw_measures);

  const Schema& schema() const noexcept { return schema_; }
  const Dictionary& dictionary() const noexcept { return dict_; }
  const Table& table() const noexcept { return table_; }
  const Engine& engine() const noexcept { return *engine_; }
  const ContextCounter& counter() const noexcept { return counter_; }

 private:
  std::uint64_t skyline_size(const Fact& f) const;

  Schema schema_;
  Dictionary dict_;
  Table table_;
  ContextCounter counter_;
  std::unique_ptr<Engine> engine_;
};

}  // namespace situfact
