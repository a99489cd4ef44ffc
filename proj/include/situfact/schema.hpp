#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace situfact {

using TupleId = std::uint64_t;
using ValueCode = std::uint32_t;

/// Code 0 is the wildcard; interned dimension values start at 1.
inline constexpr ValueCode kWildcard = 0;

inline constexpr std::size_t kMaxDimensions = 20;
inline constexpr std::size_t kMaxMeasures = 16;

enum class Direction { LargerBetter, SmallerBetter };

Direction parse_direction(std::string_view text);
std::string_view to_string(Direction d);

struct MeasureAttr {
  std::string name;
  Direction direction = Direction::LargerBetter;
};

/// Column layout R(D; M). Dimension order is fixed for the schema's lifetime
/// since constraint keys are dimension-ordered.
class Schema {
 public:
  Schema(std::vector<std::string> dimensions, std::vector<MeasureAttr> measures);

  std::size_t dimension_count() const noexcept { return dimensions_.size(); }
  std::size_t measure_count() const noexcept { return measures_.size(); }
  const std::vector<std::string>& dimensions() const noexcept { return dimensions_; }
  const std::vector<MeasureAttr>& measures() const noexcept { return measures_; }

 private:
  std::vector<std::string> dimensions_;
  std::vector<MeasureAttr> measures_;
};

/// Negates SmallerBetter attributes so every comparison downstream is
/// larger-is-better.
std::vector<double> normalize_measures(std::span<const double> raw, const Schema& schema);

/// Per-attribute interning of dimension values. Domains grow as values arrive.
class Dictionary {
 public:
  explicit Dictionary(std::size_t dimension_count);

  ValueCode intern(std::size_t dim, std::string_view value);
  /// Returns kWildcard when the value has never been seen.
  ValueCode find(std::size_t dim, std::string_view value) const;
  const std::string& value(std::size_t dim, ValueCode code) const;
  std::size_t domain_size(std::size_t dim) const { return values_.at(dim).size(); }
  std::size_t dimension_count() const noexcept { return values_.size(); }

  std::vector<ValueCode> intern_row(std::span<const std::string> values);

 private:
  std::vector<std::vector<std::string>> values_;
  std::vector<std::unordered_map<std::string, ValueCode>> codes_;
};

struct TupleRecord {
  TupleId id = 0;
  std::vector<ValueCode> dims;
  std::vector<double> measures;  // normalized
};

/// Append-only relation. Ids are assigned densely from 1 in arrival order.
class Table {
 public:
  Table(std::size_t dimension_count, std::size_t measure_count)
      : dimension_count_(dimension_count), measure_count_(measure_count) {}

  const TupleRecord& append(std::vector<ValueCode> dims, std::vector<double> measures);

  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const TupleRecord& row(TupleId id) const { return rows_.at(id - 1); }
  const TupleRecord& back() const { return rows_.back(); }
  const std::vector<TupleRecord>& rows() const noexcept { return rows_; }
  /// All rows except the most recently appended one.
  std::span<const TupleRecord> history() const {
    return rows_.empty() ? std::span<const TupleRecord>{}
                         : std::span<const TupleRecord>(rows_.data(), rows_.size() - 1);
  }
  std::size_t dimension_count() const noexcept { return dimension_count_; }
  std::size_t measure_count() const noexcept { return measure_count_; }

 private:
  std::size_t dimension_count_;
  std::size_t measure_count_;
  std::vector<TupleRecord> rows_;
};

/// Bit i set iff the two tuples agree on dimension i.
std::uint32_t agreement_mask(const TupleRecord& a, const TupleRecord& b);

}  // namespace situfact
