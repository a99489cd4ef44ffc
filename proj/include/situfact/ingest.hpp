#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "situfact/discoverer.hpp"
#include "situfact/engine.hpp"
#include "situfact/prominence.hpp"
#include "situfact/schema.hpp"

namespace situfact {

struct RunConfig {
  std::vector<std::string> dimensions;
  std::vector<MeasureAttr> measures;
  EngineKind engine = EngineKind::STopDown;
  std::optional<int> dhat;  // defaults to the dimension count
  std::optional<int> mhat;  // defaults to the measure count
  std::optional<Ratio> tau;  // nullopt = off
  std::optional<std::size_t> top_k;
  std::string store = "memory";  // or a directory
  std::optional<std::size_t> audit_every;
  std::size_t window = 1000;
  bool lenient = false;

  int effective_dhat() const { return dhat.value_or(static_cast<int>(dimensions.size())); }
  int effective_mhat() const { return mhat.value_or(static_cast<int>(measures.size())); }
  /// Throws ConfigError on out-of-range caps or conflicting gates.
  void validate() const;
};

RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);
/// "off" or a ratio.
std::optional<Ratio> parse_tau(std::string_view text);

/// RFC 4180-ish reader: commas, double quotes, CRLF tolerated.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}
  bool next(std::vector<std::string>& fields);
  /// 1-based line number of the record last returned.
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t next_line_ = 1;
};

/// One output line, fields in fixed order.
std::string fact_record_json(const Discoverer& d, TupleId id, const ScoredFact& f);

struct PlotData {
  std::size_t window = 1000;
  std::size_t tuples = 0;
  std::vector<std::uint64_t> window_counts;
  std::vector<std::uint64_t> bound_histogram;     // index = bound attributes
  std::vector<std::uint64_t> subspace_histogram;  // index = subspace size
};

void write_plot_data(const std::filesystem::path& dir, const PlotData& data);

struct IngestSinks {
  std::ostream* facts = nullptr;
  std::ostream* metrics = nullptr;
  std::ostream* diagnostics = nullptr;
  std::optional<std::filesystem::path> plots_dir;
};

struct IngestSummary {
  std::size_t rows_ingested = 0;
  std::size_t rows_skipped = 0;
  std::size_t facts_emitted = 0;
  std::size_t audits_run = 0;
  TupleResult last;
  PlotData plots;
};

/// Streams every CSV row through a Discoverer. Throws IngestError on a bad
/// row unless config.lenient, in which case the row is skipped.
IngestSummary ingest(std::istream& csv, const RunConfig& config, const IngestSinks& sinks);

}  // namespace situfact
