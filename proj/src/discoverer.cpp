#include "situfact/discoverer.hpp"

#include "situfact/errors.hpp"

namespace situfact {

Discoverer::Discoverer(Schema schema, EngineKind engine, int dhat, int mhat, std::unique_ptr<SkylineStore> store)
    : schema_(std::move(schema)),
      dict_(schema_.dimension_count()),
      table_(schema_.dimension_count(), schema_.measure_count()),
      counter_(schema_.dimension_count(), dhat),
      engine_(make_engine(engine,
                          EngineConfig{schema_.dimension_count(), schema_.measure_count(), dhat, mhat},
                          std::move(store))) {}

TupleResult Discoverer::append(std::span<const std::string> dims, std::span<const double> raw_measures) {
  if (dims.size() != schema_.dimension_count())
    throw SchemaError("expected " + std::to_string(schema_.dimension_count()) + " dimension values");
  std::vector<double> norm = normalize_measures(raw_measures, schema_);
  const TupleRecord& t = table_.append(dict_.intern_row(dims), std::move(norm));
  counter_.add(t);

  TupleResult res;
  res.id = t.id;
  res.facts = engine_->discover(table_);
  res.metrics = engine_->metrics();
  res.scored.reserve(res.facts.size());
  for (const Fact& f : res.facts) res.scored.push_back(score(f, counter_, skyline_size(f)));
  rank(res.scored);
  return res;
}

std::uint64_t Discoverer::skyline_size(const Fact& f) const {
  // Only bottom-up buckets hold the whole contextual skyline.
  if (storage_family(engine_->kind()) == StorageFamily::BottomUp && engine_->store() != nullptr)
    return engine_->store()->get(StoreKey{ConstraintKey(f.constraint), f.subspace.mask()}).size();
  return skyline_size_from_scan(table_, f.constraint, f.subspace);
}

}  // namespace situfact
