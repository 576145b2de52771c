// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "tracepart/cct.hpp"
#include "tracepart/clustering.hpp"
#include "tracepart/explain.hpp"
#include "tracepart/features.hpp"
#include "tracepart/metrics.hpp"
#include "tracepart/pipeline.hpp"
#include "tracepart/report.hpp"

using namespace tracepart;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ClassUniverse universe_of(const std::vector<std::string>& use_cases,
                          const std::vector<std::pair<std::string, std::vector<std::string>>>& paths,
                          RelationIndex* idx) {
  std::vector<UseCaseId> ids;
  for (const auto& u : use_cases) ids.push_back(UseCaseId{u});
  std::vector<ReducedPath> rp;
  for (const auto& [u, cls] : paths) rp.push_back(ReducedPath{UseCaseId{u}, cls});
  auto universe = ClassUniverse::from_paths(ids, rp);
  *idx = index_relations(rp, universe);
  return universe;
}

oracle::Partition names_of(const Partitioning& p, const ClassUniverse& u) {
  oracle::Partition out;
  for (const auto& block : p.partitions) {
    std::set<std::string> s;
    for (auto c : block) s.insert(u.name(c));
    out.push_back(std::move(s));
  }
  return out;
}

Partitioning random_partitioning(std::mt19937& rng, std::size_t n, std::size_t max_blocks) {
  const auto m = std::uniform_int_distribution<std::size_t>(1, std::min(n, max_blocks))(rng);
  std::vector<ClassId> order(n);
  for (ClassId i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  Partitioning p;
  p.partitions.resize(m);
  for (std::size_t i = 0; i < n; ++i) {
    p.partitions[i < m ? i : std::uniform_int_distribution<std::size_t>(0, m - 1)(rng)].push_back(order[i]);
  }
  for (auto& b : p.partitions) std::sort(b.begin(), b.end());
  p.target_n = m;
  return p;
}

bool refines(const Partitioning& fine, const Partitioning& coarse) {
  return std::all_of(fine.partitions.begin(), fine.partitions.end(), [&](const auto& block) {
    return std::any_of(coarse.partitions.begin(), coarse.partitions.end(), [&](const auto& c) {
      return std::includes(c.begin(), c.end(), block.begin(), block.end());
    });
  });
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// ---------------------------------------------------------------------------

Outcome dcr_example() {
  const auto t0 = Clock::now();
  RelationIndex idx;
  const auto u = universe_of({"u1", "u2", "u3"},
                             {{"u1", {"c1", "c2"}}, {"u2", {"c1", "x"}}, {"u2", {"c2", "y"}}, {"u3", {"c2", "z"}}}, &idx);
  const double v = dcr(*u.id_of("c1"), *u.id_of("c2"), idx, u);
  const double ms = seconds_since(t0) * 1e3;
  return {v == 1.0 / 3.0 && ms < 1.0, "DCR = " + fmt("%.17g", v) + ", " + fmt("%.3f", ms) + " ms"};
}

Outcome dcp_example() {
  RelationIndex idx;
  const auto u = universe_of({"u1", "u2"},
                             {{"u1", {"c3", "c1", "c5"}},
                              {"u1", {"c3", "c2", "c5"}},
                              {"u2", {"c1", "c3"}},
                              {"u2", {"c2", "c4"}},
                              {"u2", {"c2", "c5"}}},
                             &idx);
  const double v = dcp(*u.id_of("c1"), *u.id_of("c2"), idx, u);
  return {u.size() == 5 && v == 2.0 / 6.0, "DCP = " + fmt("%.17g", v) + " over |C| = " + std::to_string(u.size())};
}

Outcome cct_fixture() {
  const std::string click =
      "t0,[32],Entering ... ViewCategoryController::handleRequest\n"
      "t1,[32],Entering ... PetStoreImpl::getCategory\n"
      "t2,[32],Entering ... SqlMapCategoryDao::getCategory\n"
      "t3,[32],Entering ... Category::setCategoryId\n"
      "t4,[32],Exiting ... Category::setCategoryId\n";
  // Cart is entered twice; the repeat folds into the existing node.
  const std::string update =
      "t0,[5],Entering ... UpdateCartQuantitiesController::handleRequest\n"
      "t1,[5],Entering ... Cart::getCartItems\n"
      "t2,[5],Exiting ... Cart::getCartItems\n"
      "t3,[5],Entering ... CartItem::setQuantity\n"
      "t4,[5],Exiting ... CartItem::setQuantity\n"
      "t5,[5],Entering ... Item::getItemId\n"
      "t6,[5],Exiting ... Item::getItemId\n"
      "t7,[5],Entering ... Cart::setQuantityByItemId\n"
      "t8,[5],Exiting ... Cart::setQuantityByItemId\n"
      "t9,[5],Exiting ... UpdateCartQuantitiesController::handleRequest\n";
  TraceCorpus corpus({UseCaseTraces{UseCaseId{"click_item"}, {{"click.log", parse_trace_text(click, "click.log")}}},
                      UseCaseTraces{UseCaseId{"update_item"}, {{"update.log", parse_trace_text(update, "update.log")}}}});
  const auto a = analyze(std::move(corpus));
  const std::string expected =
      "click_item, Root, ViewCategoryController, PetStoreImpl, SqlMapCategoryDao, Category\n"
      "update_item, Root, UpdateCartQuantitiesController, Cart\n"
      "update_item, Root, UpdateCartQuantitiesController, CartItem\n"
      "update_item, Root, UpdateCartQuantitiesController, Item\n";
  const auto got = paths_dump(a.paths);
  return {got == expected, std::to_string(a.paths.size()) + " paths, dump " + (got == expected ? "matches" : "differs:\n" + got)};
}

Outcome oracle_equivalence() {
  std::mt19937 rng(20240501);
  std::size_t feature_checks = 0;
  std::size_t metric_checks = 0;
  std::size_t merge_checks = 0;
  double worst = 0.0;
  std::string first_failure;
  auto note = [&](bool ok, const std::string& what) {
    if (!ok && first_failure.empty()) first_failure = what;
  };
  for (int iter = 0; iter < 500; ++iter) {
    const auto corpus = fixtures::random_corpus(rng, 8, 4, 6);
    const auto a = analyze(fixtures::to_trace_corpus(corpus));
    const auto& u = a.universe;
    const std::string where = " (corpus " + std::to_string(iter) + ")";

    for (ClassId x = 0; x < u.size(); ++x) {
      for (ClassId y = 0; y < u.size(); ++y) {
        if (x == y) continue;
        const auto& nx = u.name(x);
        const auto& ny = u.name(y);
        const double pairs[4][2] = {{dcr(x, y, a.relations, u), oracle::dcr(corpus, nx, ny)},
                                    {icr(x, y, a.relations, u), oracle::icr(corpus, nx, ny)},
                                    {dcp(x, y, a.relations, u), oracle::dcp(corpus, nx, ny)},
                                    {icp_feature(x, y, a.relations, u), oracle::icp(corpus, nx, ny)}};
        for (const auto& p : pairs) {
          worst = std::max(worst, std::fabs(p[0] - p[1]));
          note(close(p[0], p[1], 1e-9), "feature mismatch" + where);
          ++feature_checks;
        }
      }
    }

    const auto naive = oracle::naive_agglomerate([&](std::uint32_t i, std::uint32_t j) { return a.similarity.at(i, j); },
                                                 u.size(), 1);
    note(naive.size() == a.dendrogram.size(), "merge count mismatch" + where);
    for (std::size_t k = 0; k < std::min(naive.size(), a.dendrogram.size()); ++k) {
      const auto& m = a.dendrogram[k];
      note(m.a == naive[k].a && m.b == naive[k].b && m.score == naive[k].score, "merge mismatch" + where);
      ++merge_checks;
    }

    const auto calls = oracle::call_volumes(corpus);
    std::vector<Partitioning> candidates = {random_partitioning(rng, u.size(), 4),
                                            partition_at(a, std::min<std::size_t>(u.size(), 1 + iter % 4))};
    for (const auto& p : candidates) {
      const auto np = names_of(p, u);
      const auto m = evaluate(p, a.call_graph, u);
      const double pairs[5][2] = {{m.sm, oracle::sm(np, calls)},
                                  {m.icp, oracle::icp_metric(np, calls)},
                                  {m.bcp, oracle::bcp(np, corpus)},
                                  {m.ifn, oracle::ifn(np, calls)},
                                  {m.ned, oracle::ned(np)}};
      for (const auto& q : pairs) {
        worst = std::max(worst, std::fabs(q[0] - q[1]));
        note(close(q[0], q[1], 1e-9), "metric mismatch" + where);
        ++metric_checks;
      }
    }
  }
  std::string detail = std::to_string(feature_checks) + " feature, " + std::to_string(metric_checks) + " metric, " +
                       std::to_string(merge_checks) + " merge comparisons; max |diff| " + fmt("%.3g", worst);
  if (!first_failure.empty()) detail += "; first failure: " + first_failure;
  return {first_failure.empty(), detail};
}

Outcome clustering_invariants() {
  std::mt19937 rng(99);
  std::string failure;
  std::size_t cuts = 0;
  for (int iter = 0; iter < 200 && failure.empty(); ++iter) {
    const auto a = analyze(fixtures::to_trace_corpus(fixtures::random_corpus(rng, 8, 4, 6)));
    const auto n = a.universe.size();
    const auto singles = partition_at(a, n);
    if (singles.partitions.size() != n || !singles.merge_log.empty()) failure = "n=|C| is not all singletons";
    const auto one = partition_at(a, 1);
    if (one.partitions.size() != 1 || one.partitions[0].size() != n) failure = "n=1 is not a single partition";
    for (std::size_t k = n; k > 1; --k) {
      if (!refines(partition_at(a, k), partition_at(a, k - 1))) failure = "nesting broken at n=" + std::to_string(k);
      ++cuts;
    }
  }

  // Full sweep on a 128-class application.
  oracle::Corpus big;
  for (int u = 0; u < 8; ++u) big.use_cases.push_back("uc" + std::to_string(u));
  for (int i = 0; i < 400; ++i) {
    oracle::Path p{big.use_cases[static_cast<std::size_t>(i) % 8], {}};
    const int base = (i % 8) * 16;
    const int len = 2 + i % 4;
    while (static_cast<int>(p.classes.size()) < len) {
      const int c = (rng() % 5 == 0) ? static_cast<int>(rng() % 128) : base + static_cast<int>(rng() % 16);
      auto name = "K" + std::to_string(1000 + c);
      if (!p.classes.empty() && p.classes.back() == name) continue;
      p.classes.push_back(name);
    }
    big.paths.push_back(std::move(p));
  }
  const auto a = analyze(fixtures::to_trace_corpus(big));
  const auto sizes = sweep_sizes(a.universe.size());
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    if (!refines(partition_at(a, sizes[i]), partition_at(a, sizes[i + 1]))) failure = "sweep nesting broken";
  }

  // Shuffled input files give byte-identical reports.
  fixtures::TempDir d1;
  fixtures::TempDir d2;
  auto shuffled = big;
  std::shuffle(shuffled.paths.begin(), shuffled.paths.end(), rng);
  const auto m1 = fixtures::write_corpus(d1.path(), big);
  const auto m2 = fixtures::write_corpus(d2.path(), shuffled);
  PartitionRequest req;
  req.sweep = true;
  const auto r1 = write_partition_outputs(d1.path() / "out", m1, analyze(load_corpus(m1)), req);
  const auto r2 = write_partition_outputs(d2.path() / "out", m2, analyze(load_corpus(m2)), req);
  bool identical = r1.size() == r2.size() && !r1.empty();
  for (std::size_t i = 0; identical && i < r1.size(); ++i) identical = slurp(r1[i]) == slurp(r2[i]);
  for (const char* f : {"matrix.json", "merges.json", "paths.txt"}) {
    identical = identical && slurp(d1.path() / "out" / f) == slurp(d2.path() / "out" / f);
  }
  if (!identical && failure.empty()) failure = "shuffled inputs changed the reports";

  return {failure.empty(), std::to_string(cuts) + " nested cuts, sweep " + std::to_string(sizes.size()) + " levels on " +
                               std::to_string(a.universe.size()) + " classes, " + std::to_string(r1.size()) +
                               " reports compared" + (failure.empty() ? "" : "; " + failure)};
}

Outcome metric_directions() {
  std::mt19937 rng(7);
  std::string failure;
  std::size_t merges = 0;
  for (int iter = 0; iter < 500 && failure.empty(); ++iter) {
    const auto a = analyze(fixtures::to_trace_corpus(fixtures::random_corpus(rng, 10, 4, 6)));
    const auto& u = a.universe;
    const auto p = random_partitioning(rng, u.size(), 4);
    const double base = icp_metric(p, a.call_graph);
    for (std::size_t i = 0; i < p.partitions.size(); ++i) {
      for (std::size_t j = i + 1; j < p.partitions.size(); ++j) {
        auto merged = p;
        auto& into = merged.partitions[i];
        into.insert(into.end(), p.partitions[j].begin(), p.partitions[j].end());
        std::sort(into.begin(), into.end());
        merged.partitions.erase(merged.partitions.begin() + static_cast<std::ptrdiff_t>(j));
        if (icp_metric(merged, a.call_graph) > base) failure = "merge increased icp";
        ++merges;
      }
    }
    if (bcp(p, u) > std::log(static_cast<double>(u.num_use_cases())) + 1e-12) failure = "BCP above ln|U|";
    if (sm(p, RuntimeCallGraph{}) != 0.0) failure = "SM of edgeless graph is not 0";

    // Sizes all inside [5, 20].
    Partitioning even;
    ClassId next = 0;
    for (int b = 0; b < 1 + iter % 5; ++b) {
      even.partitions.emplace_back();
      const int size = 5 + static_cast<int>(rng() % 16);
      for (int k = 0; k < size; ++k) even.partitions.back().push_back(next++);
    }
    if (ned(even) != 0.0) failure = "NED of non-extreme sizes is not 0";
  }
  return {failure.empty(), std::to_string(merges) + " pairwise merges checked" + (failure.empty() ? "" : "; " + failure)};
}

// 1300 classes in 21 use cases. Each use case mostly walks its own slice of
// the class space with occasional jumps, until ~12000 distinct edges exist.
oracle::Corpus synthetic_application(std::mt19937& rng, std::size_t* distinct_edges) {
  constexpr int kClasses = 1300;
  constexpr int kUseCases = 21;
  auto name = [](int c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "App%04d", c);
    return std::string(buf);
  };
  oracle::Corpus c;
  for (int u = 0; u < kUseCases; ++u) c.use_cases.push_back("scenario_" + std::to_string(u));
  std::set<std::pair<std::string, std::string>> edges;
  std::vector<bool> used(kClasses, false);
  int i = 0;
  while (edges.size() < 12000 || std::find(used.begin(), used.end(), false) != used.end()) {
    const int u = i++ % kUseCases;
    const int slice = kClasses / kUseCases + 1;
    oracle::Path p{c.use_cases[static_cast<std::size_t>(u)], {}};
    const int len = 3 + static_cast<int>(rng() % 6);
    while (static_cast<int>(p.classes.size()) < len) {
      int cls = (rng() % 6 == 0) ? static_cast<int>(rng() % kClasses) : u * slice + static_cast<int>(rng() % slice);
      cls = std::min(cls, kClasses - 1);
      auto n = name(cls);
      if (!p.classes.empty() && p.classes.back() == n) continue;
      used[static_cast<std::size_t>(cls)] = true;
      p.classes.push_back(std::move(n));
    }
    for (std::size_t k = 0; k + 1 < p.classes.size(); ++k) edges.insert({p.classes[k], p.classes[k + 1]});
    c.paths.push_back(std::move(p));
  }
  *distinct_edges = edges.size();
  return c;
}

Outcome performance() {
  std::mt19937 rng(1286);
  std::size_t edges = 0;
  const auto corpus = synthetic_application(rng, &edges);
  auto traces = fixtures::to_trace_corpus(corpus);

  std::vector<ReducedPath> paths;
  for (const auto& uc : traces.use_cases()) {
    auto r = reduce_use_case(uc);
    paths.insert(paths.end(), r.paths.begin(), r.paths.end());
  }
  const auto t0 = Clock::now();
  const auto universe = ClassUniverse::from_paths(traces.ids(), paths);
  const auto relations = index_relations(paths, universe);
  const auto s = similarity_matrix(relations, universe);
  const double t_features = seconds_since(t0);
  const auto t1 = Clock::now();
  const auto log = agglomerate(s, 1);
  const auto p = cut_dendrogram(universe.size(), log, default_target(universe.size()));
  const double t_cluster = seconds_since(t1);
  const double total = t_features + t_cluster;

  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0;  // ru_maxrss is KiB on Linux

  const bool ok = universe.size() == 1300 && universe.num_use_cases() == 21 && log.size() == 1299 && total <= 30.0 &&
                  peak_mb <= 2048.0 && p.partitions.size() == 5;
  return {ok, std::to_string(universe.size()) + " classes, " + std::to_string(universe.num_use_cases()) + " use cases, " +
                  std::to_string(edges) + " distinct edges; features " + fmt("%.2f", t_features) + " s + clustering " +
                  fmt("%.2f", t_cluster) + " s = " + fmt("%.2f", total) + " s, peak RSS " + fmt("%.0f", peak_mb) + " MB"};
}

Outcome coverage_arithmetic() {
  std::vector<UseCaseId> ids = {UseCaseId{"trade"}};
  std::vector<ReducedPath> paths;
  std::vector<std::string> known;
  for (int i = 0; i < 109; ++i) {
    const auto name = "Dt" + std::to_string(100 + i);
    known.push_back(name);
    if (i < 73) paths.push_back(ReducedPath{ids[0], {name}});
  }
  const auto u = ClassUniverse::from_paths(ids, paths);
  const auto c = coverage_report(u, known);
  const bool ok = c.observed_classes == 73 && c.total_known_classes == 109u && c.class_coverage_percent == 66u &&
                  c.unobserved.size() == 36;
  return {ok, std::to_string(c.observed_classes) + " of " + std::to_string(*c.total_known_classes) + " -> " +
                  std::to_string(*c.class_coverage_percent) + "% (ratio " + fmt("%.4f", *c.class_coverage_ratio) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"dcr-shared-direct-example", dcr_example},
      {"dcp-shared-partner-example", dcp_example},
      {"cct-reduction-fixture", cct_fixture},
      {"oracle-equivalence", oracle_equivalence},
      {"clustering-invariants", clustering_invariants},
      {"metric-direction-properties", metric_directions},
      {"performance-envelope", performance},
      {"coverage-arithmetic", coverage_arithmetic},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n" << std::flush;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
