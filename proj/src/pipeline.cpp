#include "tracepart/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "tracepart/error.hpp"
#include "tracepart/report.hpp"

namespace tracepart {

Analysis analyze(TraceCorpus corpus) {
  Analysis a;
  a.corpus = std::move(corpus);
  for (const auto& uc : a.corpus.use_cases()) {
    auto r = reduce_use_case(uc);
    a.warnings += r.warnings;
    a.paths.insert(a.paths.end(), r.paths.begin(), r.paths.end());
    a.reductions.push_back(std::move(r));
  }
  a.universe = ClassUniverse::from_paths(a.corpus.ids(), a.paths);
  if (a.universe.size() == 0) throw Error(ErrorKind::ManifestInvalid, "traces contain no classes");
  a.relations = index_relations(a.paths, a.universe);
  a.similarity = similarity_matrix(a.relations, a.universe);
  a.call_graph = build_call_graph(a.reductions, a.universe);
  a.dendrogram = agglomerate(a.similarity, 1);
  return a;
}

Partitioning partition_at(const Analysis& a, std::size_t n) {
  return cut_dendrogram(a.universe.size(), a.dendrogram, n);
}

std::vector<std::size_t> resolve_targets(const Analysis& a, const PartitionRequest& req) {
  const auto classes = a.universe.size();
  if (req.sweep) {
    auto sizes = classes >= 2 ? sweep_sizes(classes) : std::vector<std::size_t>{};
    if (sizes.empty()) sizes.push_back(default_target(classes));
    return sizes;
  }
  if (req.n) {
    if (*req.n < 1) throw Error(ErrorKind::InvalidTarget, "n must be at least 1");
    return {*req.n};
  }
  return {default_target(classes)};
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_partition_outputs(const std::filesystem::path& out_dir,
                                                           const std::filesystem::path& manifest,
                                                           const Analysis& a, const PartitionRequest& req) {
  const auto targets = resolve_targets(a, req);
  const auto coverage = coverage_report(a.universe, req.known_classes);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> reports;
  for (auto n : targets) {
    const auto p = partition_at(a, n);
    const auto m = evaluate(p, a.call_graph, a.universe);
    const auto e = explain(p, a.universe);
    const auto stem = "report-n" + std::to_string(n);
    write_file(out_dir / (stem + ".json"), report_json(a, p, m, e, coverage).dump(2) + "\n");
    write_file(out_dir / (stem + ".txt"), render_text(a, p, m, e, coverage));
    reports.push_back(out_dir / (stem + ".json"));
  }
  write_file(out_dir / "matrix.json", matrix_json(a.universe, a.similarity).dump() + "\n");
  write_file(out_dir / "merges.json", merges_json(a.universe, a.dendrogram).dump(2) + "\n");
  write_file(out_dir / "paths.txt", paths_dump(a.paths));

  nlohmann::json inputs;
  inputs["manifest"] = std::filesystem::absolute(manifest).lexically_normal().string();
  inputs["corpus_digest"] = a.corpus.digest();
  inputs["targets"] = targets;
  if (req.known_classes) inputs["known_classes"] = *req.known_classes;
  write_file(out_dir / "inputs.json", inputs.dump(2) + "\n");
  return reports;
}

}  // namespace tracepart
