#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "situfact/errors.hpp"
#include "situfact/ingest.hpp"

using namespace situfact;

int main(int argc, char** argv) {
  CLI::App app{"Incremental situational-fact discovery over a CSV stream"};

  std::string config_path, input_path, output_path, metrics_path, plots_dir;
  std::optional<std::string> engine, tau, store;
  std::optional<int> dhat, mhat;
  std::optional<std::size_t> top_k, window, audit_every;
  bool lenient = false;

  app.add_option("--config", config_path, "JSON schema/run config")->required()->check(CLI::ExistingFile);
  app.add_option("--input", input_path, "CSV input in arrival order ('-' for stdin)")->required();
  app.add_option("--engine", engine,
                 "brute | baseline-seq | baseline-idx | bottom-up | top-down | s-bottom-up | s-top-down");
  app.add_option("--dhat", dhat, "max bound dimension attributes");
  app.add_option("--mhat", mhat, "max measure subspace size");
  app.add_option("--tau", tau, "prominence threshold p/q, integer, or off");
  app.add_option("--top-k", top_k, "emit the k most prominent facts per tuple");
  app.add_option("--store", store, "memory, or an existing empty directory for bucket files");
  app.add_option("--metrics", metrics_path, "per-tuple metrics CSV");
  app.add_option("--plots", plots_dir, "directory for plot-data CSVs");
  app.add_option("--window", window, "tuples per window in window_counts.csv");
  app.add_option("--output", output_path, "JSONL output (default stdout)");
  app.add_option("--audit-every", audit_every, "audit the store invariant every k tuples");
  app.add_flag("--lenient", lenient, "skip bad rows instead of failing");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_run_config(config_path);
    if (engine) cfg.engine = parse_engine(*engine);
    if (dhat) cfg.dhat = *dhat;
    if (mhat) cfg.mhat = *mhat;
    if (tau) cfg.tau = parse_tau(*tau);
    if (top_k) {
      cfg.top_k = *top_k;
      if (!tau) cfg.tau.reset();  // a command-line top-k overrides a configured threshold
    }
    if (store) cfg.store = *store;
    if (window) cfg.window = *window;
    if (audit_every) cfg.audit_every = *audit_every;
    if (lenient) cfg.lenient = true;

    std::ifstream in_file;
    std::istream* in = &std::cin;
    if (input_path != "-") {
      in_file.open(input_path);
      if (!in_file) throw ConfigError("cannot read input " + input_path);
      in = &in_file;
    }
    std::ofstream out_file, metrics_file;
    IngestSinks sinks;
    sinks.facts = &std::cout;
    sinks.diagnostics = &std::cerr;
    if (!output_path.empty()) {
      out_file.open(output_path, std::ios::trunc);
      if (!out_file) throw ConfigError("cannot write " + output_path);
      sinks.facts = &out_file;
    }
    if (!metrics_path.empty()) {
      metrics_file.open(metrics_path, std::ios::trunc);
      if (!metrics_file) throw ConfigError("cannot write " + metrics_path);
      sinks.metrics = &metrics_file;
    }
    if (!plots_dir.empty()) sinks.plots_dir = plots_dir;

    IngestSummary sum = ingest(*in, cfg, sinks);
    if (sum.rows_skipped) std::cerr << "skipped " << sum.rows_skipped << " row(s)\n";
    return 0;
  } catch (const IngestError& e) {
    std::cerr << "discover: rejected input " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "discover: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "discover: " << e.what() << '\n';
    return 1;
  }
}
