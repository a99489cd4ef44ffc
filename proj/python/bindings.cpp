#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>

#include "situfact/discoverer.hpp"
#include "situfact/errors.hpp"
#include "situfact/file_store.hpp"
#include "situfact/ingest.hpp"

namespace py = pybind11;
using namespace situfact;

namespace {

py::dict fact_dict(const Discoverer& d, const ScoredFact& f) {
  const Schema& s = d.schema();
  py::dict constraint;
  for (std::size_t i = 0; i < s.dimensions().size(); ++i)
    if (f.constraint.is_bound(i)) constraint[py::str(s.dimensions()[i])] = d.dictionary().value(i, f.constraint.slot(i));
  py::list subspace;
  for (std::size_t m = 0; m < s.measures().size(); ++m)
    if (f.subspace.contains(m)) subspace.append(s.measures()[m].name);
  py::dict out;
  out["constraint"] = constraint;
  out["subspace"] = subspace;
  out["context_size"] = f.context_size;
  out["skyline_size"] = f.skyline_size;
  out["prominence"] = f.prominence().str();
  return out;
}

class PyDiscoverer {
 public:
  PyDiscoverer(std::vector<std::string> dims, std::vector<std::pair<std::string, std::string>> measures,
               const std::string& engine, std::optional<int> dhat, std::optional<int> mhat,
               std::optional<std::string> store) {
    std::vector<MeasureAttr> attrs;
    for (auto& [name, dir] : measures) attrs.push_back(MeasureAttr{name, parse_direction(dir)});
    const int n = static_cast<int>(dims.size()), s = static_cast<int>(attrs.size());
    std::unique_ptr<SkylineStore> st;
    if (store) st = std::make_unique<FileStore>(*store, attrs.size());
    d_ = std::make_unique<Discoverer>(Schema(std::move(dims), std::move(attrs)), parse_engine(engine), dhat.value_or(n),
                                      mhat.value_or(s), std::move(st));
  }

  py::dict append(const std::vector<std::string>& dims, const std::vector<double>& measures) {
    last_ = d_->append(dims, measures);
    py::list facts;
    for (const auto& f : last_.scored) facts.append(fact_dict(*d_, f));
    py::dict metrics;
    metrics["comparisons"] = last_.metrics.comparisons;
    metrics["traversed"] = last_.metrics.traversed;
    metrics["elapsed_us"] = std::chrono::duration_cast<std::chrono::microseconds>(last_.metrics.elapsed).count();
    py::dict out;
    out["tuple_id"] = last_.id;
    out["facts"] = facts;
    out["metrics"] = metrics;
    return out;
  }

  py::list prominent(const std::string& tau) const {
    py::list out;
    for (const auto& f : prominent_facts(last_.scored, Ratio::parse(tau))) out.append(fact_dict(*d_, f));
    return out;
  }

  py::list top_k(std::size_t k) const {
    py::list out;
    for (const auto& f : top_k_facts(last_.scored, k)) out.append(fact_dict(*d_, f));
    return out;
  }

  std::size_t stored_count() const {
    const SkylineStore* s = d_->engine().store();
    return s ? s->stored_count() : 0;
  }

  std::string engine() const { return std::string(engine_name(d_->engine().kind())); }

 private:
  std::unique_ptr<Discoverer> d_;
  TupleResult last_;
};

// config JSON + CSV text in, JSONL facts out
std::string run(const std::string& config_json, const std::string& csv) {
  const RunConfig c = parse_run_config(config_json);
  std::istringstream in(csv);
  std::ostringstream facts, diag;
  IngestSinks sinks;
  sinks.facts = &facts;
  sinks.diagnostics = &diag;
  ingest(in, c, sinks);
  return facts.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "situational fact discovery over append-only tables";

  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StoreError>(m, "StoreError", PyExc_OSError);
  py::register_exception<IngestError>(m, "IngestError", PyExc_ValueError);

  py::class_<PyDiscoverer>(m, "Discoverer")
      .def(py::init<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>, const std::string&,
                    std::optional<int>, std::optional<int>, std::optional<std::string>>(),
           py::arg("dimensions"), py::arg("measures"), py::arg("engine") = "s-top-down", py::arg("dhat") = py::none(),
           py::arg("mhat") = py::none(), py::arg("store") = py::none())
      .def("append", &PyDiscoverer::append, py::arg("dims"), py::arg("measures"))
      .def("prominent", &PyDiscoverer::prominent, py::arg("tau"), "facts of the last tuple with prominence >= tau")
      .def("top_k", &PyDiscoverer::top_k, py::arg("k"))
      .def_property_readonly("stored_count", &PyDiscoverer::stored_count)
      .def_property_readonly("engine", &PyDiscoverer::engine);

  m.def("engines", [] {
    std::vector<std::string> out;
    for (EngineKind k : all_engines()) out.emplace_back(engine_name(k));
    return out;
  });
  m.def("run", &run, py::arg("config_json"), py::arg("csv"));
}
