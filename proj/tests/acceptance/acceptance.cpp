// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 run all
//   acceptance --criterion N   run one (exit status reflects it)

#include <algorithm>
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "situfact/audit.hpp"
#include "situfact/discoverer.hpp"
#include "situfact/errors.hpp"
#include "situfact/file_store.hpp"
#include "situfact/frontier.hpp"
#include "situfact/ingest.hpp"
#include "support/fixtures.hpp"
#include "support/random_stream.hpp"
#include "support/temp_dir.hpp"

using namespace situfact;
using namespace situfact::testing;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeedBase = 0x5eed0000;
constexpr std::size_t kStreams = 1000;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "MISMATCH: ") + what);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_s(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << "s";
  return o.str();
}

TupleResult run_mini(Discoverer& d) {
  TupleResult r;
  for (const auto& row : mini_world_rows()) r = d.append(row.dims, row.measures);
  return r;
}

const ScoredFact* find_fact(const std::vector<ScoredFact>& v, const Constraint& c, std::uint32_t m) {
  for (const auto& f : v)
    if (f.constraint == c && f.subspace.mask() == m) return &f;
  return nullptr;
}

Outcome mini_world_count() {
  Outcome o;
  for (EngineKind k : all_engines()) {
    auto t0 = Clock::now();
    Discoverer d(mini_world_schema(), k, 5, 3);
    auto r = run_mini(d);
    const double s = seconds_since(t0);
    o.expect(r.facts.size() == 196, std::string(engine_name(k)) + " |S^t7| = " + std::to_string(r.facts.size()) +
                                        " (want 196)");
    o.expect(s < 1.0, std::string(engine_name(k)) + " runtime " + fmt_s(s));
  }
  return o;
}

Outcome prominence_values() {
  Outcome o;
  Discoverer d(mini_world_schema(), EngineKind::STopDown, 5, 3);
  auto r = run_mini(d);
  const Schema& s = d.schema();
  auto* feb = find_fact(r.scored, constraint_of(d, {{1, "Feb."}}), subspace_of(s, {"points", "assists", "rebounds"}));
  o.expect(feb && feb->prominence() == Ratio{5, 2},
           "(month=Feb., all measures) = " + (feb ? feb->prominence().str() : std::string("absent")) + " (want 5/2)");
  auto* cn = find_fact(r.scored, constraint_of(d, {{3, "Celtics"}, {4, "Nets"}}), subspace_of(s, {"assists", "rebounds"}));
  o.expect(cn && cn->prominence() == Ratio{3, 2},
           "(Celtics vs Nets, {assists, rebounds}) = " + (cn ? cn->prominence().str() : std::string("absent")) +
               " (want 3/2)");
  const Ratio best = r.scored.empty() ? Ratio{0, 1} : r.scored.front().prominence();
  o.expect(best == Ratio{3, 1}, "max prominence = " + best.str() + " (want 3/1)");
  auto at3 = prominent_facts(r.scored, Ratio{3, 1});
  const Constraint wesley = constraint_of(d, {{0, "Wesley"}});
  const std::uint32_t reb = subspace_of(s, {"rebounds"});
  const bool has_wesley = std::any_of(at3.begin(), at3.end(), [&](const ScoredFact& f) {
    return f.constraint == wesley && f.subspace.mask() == reb;
  });
  o.expect(!at3.empty() && has_wesley, "tau=3 group has " + std::to_string(at3.size()) +
                                           " fact(s), contains (player=Wesley, {rebounds}): " +
                                           (has_wesley ? "yes" : "no"));
  auto at4 = prominent_facts(r.scored, Ratio{4, 1});
  o.expect(at4.empty(), "tau=4 returns " + std::to_string(at4.size()) + " fact(s) (want 0)");
  return o;
}

// a1=1 a2=2, b1=1 b2=2, c1=1 c2=2
const std::vector<std::pair<std::vector<ValueCode>, std::vector<double>>> kRunning = {
    {{1, 2, 2}, {10, 15}}, {{1, 1, 1}, {15, 10}}, {{2, 1, 2}, {17, 17}}, {{2, 1, 1}, {20, 20}}, {{1, 1, 1}, {11, 15}},
};

std::unique_ptr<Engine> run_running(EngineKind k, Table& table) {
  auto e = make_engine(k, EngineConfig{3, 2, 3, 2});
  for (const auto& [dims, ms] : kRunning) {
    table.append(dims, ms);
    e->discover(table);
  }
  return e;
}

std::set<std::string> holding(const StoreSnapshot& s, TupleId id, std::uint32_t m) {
  auto name = [](const Constraint& c) {
    std::string out = "<";
    const char* letters = "abc";
    for (std::size_t i = 0; i < 3; ++i) {
      if (i) out += ",";
      out += c.is_bound(i) ? std::string(1, letters[i]) + std::to_string(c.slot(i)) : "*";
    }
    return out + ">";
  };
  std::set<std::string> out;
  for (const auto& [k, ids] : s)
    if (k.subspace == m && ids.count(id)) out.insert(name(k.constraint.decode()));
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return "{" + out + "}";
}

Outcome running_states() {
  Outcome o;
  {
    Table t(3, 2);
    auto e = run_running(EngineKind::BottomUp, t);
    auto s = snapshot(*e->store());
    auto t5 = holding(s, 5, 3);
    o.expect(t5 == std::set<std::string>{"<a1,b1,c1>", "<a1,b1,*>", "<a1,*,c1>", "<a1,*,*>"},
             "BottomUp t5 at " + join(t5));
    o.expect(!holding(s, 1, 3).count("<a1,*,*>"), "BottomUp t1 evicted from <a1,*,*>");
  }
  {
    Table t(3, 2);
    auto e = run_running(EngineKind::TopDown, t);
    auto s = snapshot(*e->store());
    auto t5 = holding(s, 5, 3), t1 = holding(s, 1, 3);
    o.expect(t5 == std::set<std::string>{"<a1,*,*>"}, "TopDown t5 at " + join(t5));
    o.expect(t1.count("<a1,*,c2>") && !t1.count("<a1,b2,*>") && !t1.count("<a1,*,*>"),
             "TopDown t1 at " + join(t1));
  }
  return o;
}

Outcome comparison_counters() {
  Outcome o;
  Table a(3, 2), b(3, 2);
  auto td = run_running(EngineKind::TopDown, a);
  auto st = run_running(EngineKind::STopDown, b);
  o.expect(td->metrics().comparisons == 7,
           "TopDown comparisons on t5 = " + std::to_string(td->metrics().comparisons) + " (want 7)");
  o.expect(st->metrics().comparisons == 4,
           "STopDown comparisons on t5 = " + std::to_string(st->metrics().comparisons) + " (want 4)");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t tuples = 0, discrepancies = 0;
  std::string first;
  for (std::size_t i = 0; i < kStreams; ++i) {
    const RandomStream rs = make_stream(kSeedBase + i);
    EngineBank bank(rs.config(), all_engines());
    for (std::size_t r = 0; r < rs.size(); ++r) {
      auto per = bank.step(rs.rows_dims[r], rs.rows_measures[r]);
      ++tuples;
      for (std::size_t e = 1; e < per.size(); ++e)
        if (per[e] != per[0]) {
          if (!discrepancies++)
            first = "seed " + std::to_string(rs.seed) + " tuple " + std::to_string(r + 1) + " engine " +
                    std::string(engine_name(bank.engines[e]->kind()));
        }
    }
  }
  const double s = seconds_since(t0);
  o.expect(discrepancies == 0, std::to_string(kStreams) + " streams, " + std::to_string(tuples) + " tuples, " +
                                   std::to_string(discrepancies) + " discrepancies" +
                                   (first.empty() ? "" : " (first: " + first + ")"));
  o.expect(s < 300, "suite time " + fmt_s(s));
  return o;
}

Outcome invariant_audits() {
  Outcome o;
  auto t0 = Clock::now();
  const std::vector<EngineKind> kinds = {EngineKind::BottomUp, EngineKind::SBottomUp, EngineKind::TopDown,
                                         EngineKind::STopDown};
  std::size_t audits = 0, violations = 0;
  std::string first;
  for (std::size_t i = 0; i < kStreams; ++i) {
    const RandomStream rs = make_stream(kSeedBase + i);
    EngineBank bank(rs.config(), kinds);
    std::vector<InvariantAuditor> auditors;
    for (auto& e : bank.engines) auditors.emplace_back(rs.config(), e->maintained_subspaces());
    for (std::size_t r = 0; r < rs.size(); ++r) {
      bank.step(rs.rows_dims[r], rs.rows_measures[r]);
      for (std::size_t e = 0; e < kinds.size(); ++e) {
        auditors[e].observe(bank.table);
        auto v = auditors[e].audit(*bank.engines[e], bank.table);
        ++audits;
        if (!v.empty() && !violations++)
          first = std::string(engine_name(kinds[e])) + " seed " + std::to_string(rs.seed) + ": " + v.front();
        violations += v.size() > 1 ? v.size() - 1 : 0;
      }
    }
  }
  o.expect(violations == 0, std::to_string(audits) + " audits, " + std::to_string(violations) + " violations" +
                                (first.empty() ? "" : " (first: " + first + ")"));
  o.notes.push_back("time " + fmt_s(seconds_since(t0)));
  return o;
}

Outcome storage_dominance() {
  Outcome o;
  std::size_t prefixes = 0, bad = 0;
  std::uint64_t bu_total = 0, td_total = 0;
  for (std::size_t i = 0; i < kStreams; ++i) {
    const RandomStream rs = make_stream(kSeedBase + i);
    EngineBank bank(rs.config(), {EngineKind::BottomUp, EngineKind::TopDown});
    for (std::size_t r = 0; r < rs.size(); ++r) {
      bank.step(rs.rows_dims[r], rs.rows_measures[r]);
      const auto bu = bank.engines[0]->store()->stored_count(), td = bank.engines[1]->store()->stored_count();
      ++prefixes;
      bad += td > bu;
      if (r + 1 == rs.size()) bu_total += bu, td_total += td;
    }
  }
  o.expect(bad == 0, std::to_string(prefixes) + " prefixes, " + std::to_string(bad) + " with TopDown > BottomUp");
  o.notes.push_back("final stored entries summed over streams: BottomUp " + std::to_string(bu_total) + ", TopDown " +
                    std::to_string(td_total));
  return o;
}

Constraint cube(const std::string& name) {
  if (name == "T") return Constraint::top(3);
  std::vector<ValueCode> s(3, kWildcard);
  if (name.find('a') != std::string::npos) s[0] = 1;
  if (name.find('b') != std::string::npos) s[1] = 1;
  if (name.find('c') != std::string::npos) s[2] = 1;
  return Constraint(std::move(s));
}

ConstraintSet cubes(std::initializer_list<const char*> names) {
  ConstraintSet out;
  for (const char* n : names) out.insert(cube(n));
  return out;
}

Outcome frontier_fixtures() {
  Outcome o;
  struct Case {
    const char* name;
    ConstraintSet l1, l2, want;
  };
  // the last case with a1c1 listed on both sides must be rejected, see below
  const std::vector<Case> cases = {
      {"L1 {T,a1,c1}", cubes({"T", "a1", "c1"}), cubes({"b1", "a1b1", "b1c1", "a1c1", "a1b1c1"}), cubes({"b1", "a1c1"})},
      {"L1 {T,a1,c1,a1c1}", cubes({"T", "a1", "c1", "a1c1"}), cubes({"b1", "a1b1", "b1c1", "a1b1c1"}), cubes({"b1", "a1c1"})},
      {"L1 {T,a1,b1}", cubes({"T", "a1", "b1"}), cubes({"c1", "a1b1", "a1c1", "b1c1", "a1b1c1"}), cubes({"c1", "a1b1"})},
      {"L1 {T,a1,b1,a1b1}", cubes({"T", "a1", "b1", "a1b1"}), cubes({"c1", "a1c1", "b1c1", "a1b1c1"}), cubes({"c1", "a1b1"})},
  };
  for (const auto& c : cases) o.expect(compute_frontier(c.l1, c.l2) == c.want, c.name);
  bool raised = false;
  try {
    compute_frontier(cubes({"T", "a1", "b1", "a1c1"}), cubes({"c1", "a1c1", "b1c1", "a1b1c1"}));
  } catch (const PartitionError&) {
    raised = true;
  }
  o.expect(raised, "L1 {T,a1,b1,a1c1} overlapping L2 raises a partition error");
  return o;
}

Outcome lattice_counts() {
  Outcome o;
  bool all = true;
  for (int n = 1; n <= 8; ++n) {
    TupleRecord t{1, std::vector<ValueCode>(static_cast<std::size_t>(n), 1), {}};
    all &= enumerate_constraints(t, n).size() == (1ULL << n);
    for (int k = 0; k <= n; ++k) {
      std::uint64_t want = 0;
      for (int j = 0; j <= k; ++j) want += binomial(n, j);
      all &= enumerate_constraints(t, k).size() == want;
    }
  }
  o.expect(all, "2^n for n in 1..8 and binomial sums under every cap");
  TupleRecord t4{4, {2, 1, 1}, {}}, t5{5, {1, 1, 1}, {}};
  o.expect(intersection_bottom(t4, t5) == Constraint({0, 1, 1}), "intersection_bottom(t4, t5) = <*,b1,c1>");
  return o;
}

std::string stream_csv(const RandomStream& rs) {
  std::ostringstream out;
  auto names = rs.dim_names();
  for (const auto& n : names) out << n << ',';
  for (std::size_t m = 0; m < rs.measures; ++m) out << "m" << m + 1 << (m + 1 < rs.measures ? "," : "\n");
  for (std::size_t r = 0; r < rs.size(); ++r) {
    for (const auto& v : rs.dim_strings(r)) out << v << ',';
    for (std::size_t m = 0; m < rs.measures; ++m)
      out << rs.rows_measures[r][m] << (m + 1 < rs.measures ? "," : "\n");
  }
  return out.str();
}

std::string ingest_text(const RunConfig& c, const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  IngestSinks sinks;
  sinks.facts = &out;
  ingest(in, c, sinks);
  return out.str();
}

Outcome backend_equivalence() {
  Outcome o;
  const std::vector<EngineKind> kinds = {EngineKind::BottomUp, EngineKind::SBottomUp, EngineKind::TopDown,
                                         EngineKind::STopDown};
  const std::string mini = read_file(data_path("mini_world.csv"));
  bool mini_ok = true;
  for (EngineKind k : kinds) {
    RunConfig c = load_run_config(data_path("mini_world.json"));
    c.engine = k;
    const std::string mem = ingest_text(c, mini);
    TempDir dir;
    c.store = dir.path().string();
    mini_ok &= !mem.empty() && ingest_text(c, mini) == mem;
  }
  o.expect(mini_ok, "mini-world JSONL identical for memory and file stores (4 engines)");

  std::size_t same = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const RandomStream rs = make_stream(kSeedBase + 50000 + i);
    RunConfig c;
    c.dimensions = rs.dim_names();
    c.measures = rs.measure_attrs();
    c.dhat = rs.dhat;
    c.mhat = rs.mhat;
    c.engine = kinds[i % kinds.size()];
    const std::string csv = stream_csv(rs);
    const std::string mem = ingest_text(c, csv);
    TempDir dir;
    c.store = dir.path().string();
    same += ingest_text(c, csv) == mem;
  }
  o.expect(same == 50, std::to_string(same) + "/50 random streams byte-identical");

  TempDir dir;
  FileStore fs(dir.path(), 3);
  const StoreKey key{ConstraintKey(Constraint({0, 7, 1})), 5};
  const Bucket b = {StoredTuple{3, {1.5, -2, 0}}, StoredTuple{11, {-0.0, 1e300, 4}}};
  fs.file_flush(key, b);
  const std::string disk = read_file(fs.path_for(key).string());
  const Bucket back = fs.file_load(key);
  fs.file_flush(key, back);
  o.expect(back == b && disk == FileStore::encode(b, 3) && read_file(fs.path_for(key).string()) == disk,
           "bucket flush/load round trip is bit-exact");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> v = {
      {1, "mini-world fact count", mini_world_count},
      {2, "prominence values", prominence_values},
      {3, "running-example golden states", running_states},
      {4, "comparison counters", comparison_counters},
      {5, "oracle equivalence", oracle_equivalence},
      {6, "invariant audits", invariant_audits},
      {7, "storage dominance", storage_dominance},
      {8, "frontier fixtures", frontier_fixtures},
      {9, "lattice counts", lattice_counts},
      {10, "backend equivalence", backend_equivalence},
  };
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << '\n';
    for (const auto& n : o.notes) std::cout << "      " << n << '\n';
    failed += !o.pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return failed ? 1 : 0;
}
