#include "situfact/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "situfact/audit.hpp"
#include "situfact/errors.hpp"
#include "situfact/file_store.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace situfact {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_missing(std::string_view s) {
  return s.empty() || s == "NULL" || s == "null" || s == "NA" || s == "N/A" || s == "NaN" || s == "nan";
}

double parse_measure(std::string_view raw, const std::string& column, std::size_t line) {
  std::string_view s = trim(raw);
  if (is_missing(s)) throw IngestError(line, "missing value for measure '" + column + "'");
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
    throw IngestError(line, "cannot parse '" + std::string(raw) + "' as a number for measure '" + column + "'");
  return v;
}

template <class T>
T get_int(const ordered_json& j, const char* field) {
  if (!j.is_number_integer()) throw ConfigError(std::string("config field '") + field + "' must be an integer");
  return j.get<T>();
}

std::unique_ptr<SkylineStore> open_store(const RunConfig& config) {
  if (config.store == "memory") return make_memory_store();
  const fs::path root(config.store);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw ConfigError("store directory does not exist: " + config.store);
  if (!fs::is_empty(root, ec)) throw ConfigError("store directory must be empty: " + config.store);
  return std::make_unique<FileStore>(root, config.measures.size());
}

}  // namespace

void RunConfig::validate() const {
  if (dimensions.empty()) throw ConfigError("config lists no dimension columns");
  if (measures.empty()) throw ConfigError("config lists no measure columns");
  const int n = static_cast<int>(dimensions.size()), s = static_cast<int>(measures.size());
  if (effective_dhat() < 0 || effective_dhat() > n)
    throw ConfigError("dhat must lie in [0, " + std::to_string(n) + "]");
  if (effective_mhat() < 1 || effective_mhat() > s)
    throw ConfigError("mhat must lie in [1, " + std::to_string(s) + "]");
  if (tau && top_k) throw ConfigError("tau and top-k are mutually exclusive");
  if (top_k && *top_k == 0) throw ConfigError("top-k must be positive");
  if (window == 0) throw ConfigError("window must be positive");
  if (audit_every && *audit_every == 0) throw ConfigError("audit-every must be positive");
}

std::optional<Ratio> parse_tau(std::string_view text) {
  if (text == "off") return std::nullopt;
  return Ratio::parse(text);
}

RunConfig parse_run_config(std::string_view json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& d : j.at("dimensions")) c.dimensions.push_back(d.get<std::string>());
    for (const auto& m : j.at("measures")) {
      if (m.is_string()) {
        c.measures.push_back(MeasureAttr{m.get<std::string>(), Direction::LargerBetter});
      } else {
        c.measures.push_back(MeasureAttr{m.at("name").get<std::string>(),
                                         parse_direction(m.value("direction", std::string("larger")))});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad schema in config: ") + e.what());
  } catch (const SchemaError& e) {
    throw ConfigError(e.what());
  }
  if (j.contains("engine")) c.engine = parse_engine(j["engine"].get<std::string>());
  if (j.contains("dhat")) c.dhat = get_int<int>(j["dhat"], "dhat");
  if (j.contains("mhat")) c.mhat = get_int<int>(j["mhat"], "mhat");
  if (j.contains("tau")) {
    const auto& t = j["tau"];
    if (t.is_string()) c.tau = parse_tau(t.get<std::string>());
    else if (t.is_number_unsigned() || t.is_number_integer()) c.tau = Ratio{t.get<std::uint64_t>(), 1};
    else if (!t.is_null()) throw ConfigError("tau must be \"off\", \"p/q\" or an integer");
  }
  if (j.contains("top_k") && !j["top_k"].is_null()) c.top_k = get_int<std::size_t>(j["top_k"], "top_k");
  if (j.contains("store")) c.store = j["store"].get<std::string>();
  if (j.contains("audit_every") && !j["audit_every"].is_null())
    c.audit_every = get_int<std::size_t>(j["audit_every"], "audit_every");
  if (j.contains("window")) c.window = get_int<std::size_t>(j["window"], "window");
  if (j.contains("lenient")) c.lenient = j["lenient"].get<bool>();
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_run_config(text);
}

std::string fact_record_json(const Discoverer& d, TupleId id, const ScoredFact& f) {
  ordered_json j;
  j["tuple_id"] = id;
  ordered_json c = ordered_json::object();
  const auto& dims = d.schema().dimensions();
  for (std::size_t i = 0; i < f.constraint.size(); ++i)
    if (f.constraint.is_bound(i)) c[dims[i]] = d.dictionary().value(i, f.constraint.slot(i));
  j["constraint"] = std::move(c);
  ordered_json m = ordered_json::array();
  for (std::size_t i = 0; i < d.schema().measure_count(); ++i)
    if (f.subspace.contains(i)) m.push_back(d.schema().measures()[i].name);
  j["subspace"] = std::move(m);
  j["context_size"] = f.context_size;
  j["skyline_size"] = f.skyline_size;
  j["prominence"] = f.prominence().str();
  return j.dump();
}

void write_plot_data(const fs::path& dir, const PlotData& data) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create plot directory " + dir.string() + ": " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("window_counts.csv");
    out << "window,first_tuple,last_tuple,prominent_facts\n";
    for (std::size_t w = 0; w < data.window_counts.size(); ++w) {
      const std::size_t first = w * data.window + 1;
      const std::size_t last = std::min((w + 1) * data.window, data.tuples);
      out << w << ',' << first << ',' << last << ',' << data.window_counts[w] << '\n';
    }
  }
  {
    auto out = open("bound_histogram.csv");
    out << "bound_attributes,prominent_facts\n";
    for (std::size_t k = 0; k < data.bound_histogram.size(); ++k) out << k << ',' << data.bound_histogram[k] << '\n';
  }
  {
    auto out = open("subspace_histogram.csv");
    out << "subspace_size,prominent_facts\n";
    for (std::size_t k = 1; k < data.subspace_histogram.size(); ++k)
      out << k << ',' << data.subspace_histogram[k] << '\n';
  }
}

IngestSummary ingest(std::istream& csv, const RunConfig& config, const IngestSinks& sinks) {
  config.validate();
  IngestSummary sum;
  sum.plots.window = config.window;
  sum.plots.bound_histogram.assign(config.dimensions.size() + 1, 0);
  sum.plots.subspace_histogram.assign(config.measures.size() + 1, 0);

  CsvReader reader(csv);
  std::vector<std::string> header;
  if (!reader.next(header)) return sum;
  for (auto& h : header) h = std::string(trim(h));

  std::unordered_map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(header[i], i);
  auto locate = [&](const std::string& name) {
    auto it = col.find(name);
    if (it == col.end()) throw IngestError(reader.line(), "header lacks column '" + name + "'");
    return it->second;
  };
  std::vector<std::size_t> dim_cols, measure_cols;
  for (const auto& d : config.dimensions) dim_cols.push_back(locate(d));
  for (const auto& m : config.measures) measure_cols.push_back(locate(m.name));

  Discoverer disc(Schema(config.dimensions, config.measures), config.engine, config.effective_dhat(),
                  config.effective_mhat(), open_store(config));
  std::optional<InvariantAuditor> auditor;
  if (config.audit_every)
    auditor.emplace(disc.engine().config(), disc.engine().maintained_subspaces());

  if (sinks.metrics) *sinks.metrics << "tuple_id,comparisons,traversed,facts,prominent,elapsed_us\n";

  std::vector<std::string> row, dims(config.dimensions.size());
  std::vector<double> measures(config.measures.size());
  while (reader.next(row)) {
    try {
      if (row.size() != header.size())
        throw IngestError(reader.line(), "expected " + std::to_string(header.size()) + " fields, got " +
                                             std::to_string(row.size()));
      for (std::size_t i = 0; i < dim_cols.size(); ++i) dims[i] = row[dim_cols[i]];
      for (std::size_t i = 0; i < measure_cols.size(); ++i)
        measures[i] = parse_measure(row[measure_cols[i]], config.measures[i].name, reader.line());
    } catch (const IngestError& e) {
      if (!config.lenient) throw;
      ++sum.rows_skipped;
      if (sinks.diagnostics) *sinks.diagnostics << "skipped " << e.what() << '\n';
      continue;
    }

    TupleResult res = disc.append(dims, measures);
    ++sum.rows_ingested;

    if (auditor) {
      auditor->observe(disc.table());
      if (sum.rows_ingested % *config.audit_every == 0) {
        ++sum.audits_run;
        auto violations = auditor->audit(disc.engine(), disc.table());
        if (!violations.empty())
          throw AuditError("invariant violated after tuple " + std::to_string(res.id) + ": " + violations.front());
      }
    }

    std::vector<ScoredFact> emitted;
    if (config.top_k) emitted = top_k_facts(res.scored, *config.top_k);
    else if (config.tau) emitted = prominent_facts(res.scored, *config.tau);
    else emitted = res.scored;

    if (sinks.facts) {
      for (const auto& f : emitted) *sinks.facts << fact_record_json(disc, res.id, f) << '\n';
      sinks.facts->flush();
    }
    if (sinks.metrics) {
      *sinks.metrics << res.id << ',' << res.metrics.comparisons << ',' << res.metrics.traversed << ','
                     << res.facts.size() << ',' << emitted.size() << ','
                     << std::chrono::duration_cast<std::chrono::microseconds>(res.metrics.elapsed).count() << '\n';
    }

    const std::size_t w = (res.id - 1) / config.window;
    if (sum.plots.window_counts.size() <= w) sum.plots.window_counts.resize(w + 1, 0);
    sum.plots.window_counts[w] += emitted.size();
    for (const auto& f : emitted) {
      ++sum.plots.bound_histogram[static_cast<std::size_t>(f.constraint.bound_count())];
      ++sum.plots.subspace_histogram[static_cast<std::size_t>(f.subspace.size())];
    }
    sum.plots.tuples = res.id;
    sum.facts_emitted += emitted.size();
    sum.last = std::move(res);
  }
  if (sinks.plots_dir) write_plot_data(*sinks.plots_dir, sum.plots);
  return sum;
}

}  // namespace situfact
