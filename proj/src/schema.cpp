#include "situfact/schema.hpp"

#include <unordered_set>

#include "situfact/errors.hpp"

namespace situfact {

Direction parse_direction(std::string_view text) {
  if (text == "larger" || text == "LargerBetter" || text == "max") return Direction::LargerBetter;
  if (text == "smaller" || text == "SmallerBetter" || text == "min") return Direction::SmallerBetter;
  throw SchemaError("unknown measure direction '" + std::string(text) + "'");
}

std::string_view to_string(Direction d) {
  return d == Direction::LargerBetter ? "larger" : "smaller";
}

Schema::Schema(std::vector<std::string> dimensions, std::vector<MeasureAttr> measures)
    : dimensions_(std::move(dimensions)), measures_(std::move(measures)) {
  if (dimensions_.empty()) throw SchemaError("schema needs at least one dimension attribute");
  if (measures_.empty()) throw SchemaError("schema needs at least one measure attribute");
  if (dimensions_.size() > kMaxDimensions)
    throw SchemaError("at most " + std::to_string(kMaxDimensions) + " dimension attributes supported");
  if (measures_.size() > kMaxMeasures)
    throw SchemaError("at most " + std::to_string(kMaxMeasures) + " measure attributes supported");
  std::unordered_set<std::string> seen;
  auto check = [&](const std::string& name) {
    if (name.empty()) throw SchemaError("empty attribute name");
    if (!seen.insert(name).second) throw SchemaError("duplicate attribute name '" + name + "'");
  };
  for (const auto& d : dimensions_) check(d);
  for (const auto& m : measures_) check(m.name);
}

std::vector<double> normalize_measures(std::span<const double> raw, const Schema& schema) {
  if (raw.size() != schema.measure_count())
    throw SchemaError("expected " + std::to_string(schema.measure_count()) + " measure values, got " +
                      std::to_string(raw.size()));
  std::vector<double> out(raw.begin(), raw.end());
  for (std::size_t i = 0; i < out.size(); ++i)
    if (schema.measures()[i].direction == Direction::SmallerBetter) out[i] = -out[i];
  return out;
}

Dictionary::Dictionary(std::size_t dimension_count)
    : values_(dimension_count), codes_(dimension_count) {}

ValueCode Dictionary::intern(std::size_t dim, std::string_view value) {
  auto& codes = codes_.at(dim);
  auto it = codes.find(std::string(value));
  if (it != codes.end()) return it->second;
  auto& vals = values_[dim];
  vals.emplace_back(value);
  ValueCode code = static_cast<ValueCode>(vals.size());
  codes.emplace(vals.back(), code);
  return code;
}

ValueCode Dictionary::find(std::size_t dim, std::string_view value) const {
  const auto& codes = codes_.at(dim);
  auto it = codes.find(std::string(value));
  return it == codes.end() ? kWildcard : it->second;
}

const std::string& Dictionary::value(std::size_t dim, ValueCode code) const {
  const auto& vals = values_.at(dim);
  if (code == kWildcard || code > vals.size())
    throw SchemaError("no value with code " + std::to_string(code) + " in dimension " + std::to_string(dim));
  return vals[code - 1];
}

std::vector<ValueCode> Dictionary::intern_row(std::span<const std::string> values) {
  if (values.size() != values_.size())
    throw SchemaError("expected " + std::to_string(values_.size()) + " dimension values, got " +
                      std::to_string(values.size()));
  std::vector<ValueCode> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = intern(i, values[i]);
  return out;
}

const TupleRecord& Table::append(std::vector<ValueCode> dims, std::vector<double> measures) {
  if (dims.size() != dimension_count_) throw SchemaError("dimension arity mismatch");
  if (measures.size() != measure_count_) throw SchemaError("measure arity mismatch");
  rows_.push_back(TupleRecord{static_cast<TupleId>(rows_.size() + 1), std::move(dims), std::move(measures)});
  return rows_.back();
}

std::uint32_t agreement_mask(const TupleRecord& a, const TupleRecord& b) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < a.dims.size(); ++i)
    if (a.dims[i] == b.dims[i]) m |= 1U << i;
  return m;
}

}  // namespace situfact
