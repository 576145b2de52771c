// tracepart: recommend class partitions from use-case-labeled execution traces.
//
//   tracepart partition --manifest <path> [--n <int> | --sweep] [--known-classes <path>] --out <dir>
//   tracepart metrics   --partitions <file> --manifest <path>
//   tracepart serve     --out <dir> --port <int> [--host <addr>] [--n <int>]
//
// Exit codes: 0 success, 1 analysis error, 2 usage error.

#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracepart/error.hpp"
#include "tracepart/pipeline.hpp"
#include "tracepart/report.hpp"
#include "tracepart/service.hpp"
#include "tracepart/session.hpp"

namespace fs = std::filesystem;
using namespace tracepart;

namespace {

nlohmann::json read_json(const fs::path& path, ErrorKind kind) {
  std::ifstream in(path);
  if (!in) throw Error(kind, "cannot open " + path.string());
  auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw Error(kind, path.string() + " is not valid JSON");
  return doc;
}

int run_partition(const fs::path& manifest, std::optional<std::size_t> n, bool sweep,
                  const std::optional<fs::path>& known, const fs::path& out) {
  PartitionRequest req;
  req.n = n;
  req.sweep = sweep;
  if (known) req.known_classes = read_known_classes(*known);

  const auto analysis = analyze(load_corpus(manifest));
  if (analysis.warnings.total() > 0) {
    std::cerr << "warning: " << analysis.warnings.unmatched_exits << " unmatched exits dropped, "
              << analysis.warnings.implicitly_closed << " frames implicitly closed\n";
  }
  const auto reports = write_partition_outputs(out, manifest, analysis, req);
  std::cout << analysis.universe.size() << " classes, " << analysis.universe.num_use_cases() << " use cases, "
            << analysis.paths.size() << " reduced paths\n";
  for (const auto& r : reports) std::cout << "wrote " << r.string() << "\n";
  return 0;
}

int run_metrics(const fs::path& partitions, const fs::path& manifest) {
  const auto analysis = analyze(load_corpus(manifest));
  const auto p = partitioning_from_json(read_json(partitions, ErrorKind::PartitionFileInvalid), analysis.universe);
  const auto m = evaluate(p, analysis.call_graph, analysis.universe);
  std::cout << metrics_json(m, p, analysis.universe).dump(2) << "\n";
  return 0;
}

// Picks report-n<k>.json: the requested k, otherwise the smallest k present.
fs::path pick_report(const fs::path& out, std::optional<std::size_t> n) {
  if (n) return out / ("report-n" + std::to_string(*n) + ".json");
  static const std::regex pattern(R"(report-n(\d+)\.json)");
  std::optional<std::pair<std::size_t, fs::path>> best;
  for (const auto& entry : fs::directory_iterator(out)) {
    std::smatch m;
    const auto name = entry.path().filename().string();
    if (!std::regex_match(name, m, pattern)) continue;
    const auto k = std::stoul(m[1].str());
    if (!best || k < best->first) best = {k, entry.path()};
  }
  if (!best) throw Error(ErrorKind::Io, "no report-n<k>.json in " + out.string());
  return best->second;
}

HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int run_serve(const fs::path& out, const std::string& host, int port, std::optional<std::size_t> n) {
  const auto inputs = read_json(out / "inputs.json", ErrorKind::Io);
  const fs::path manifest = inputs.at("manifest").get<std::string>();
  auto analysis = std::make_shared<const Analysis>(analyze(load_corpus(manifest)));
  if (inputs.contains("corpus_digest") && inputs["corpus_digest"] != analysis->corpus.digest()) {
    std::cerr << "warning: traces changed since the partition run\n";
  }

  const auto report_path = pick_report(out, n);
  const auto initial = partitioning_from_json(read_json(report_path, ErrorKind::PartitionFileInvalid), analysis->universe);
  std::optional<std::vector<std::string>> known;
  if (inputs.contains("known_classes")) known = inputs["known_classes"].get<std::vector<std::string>>();

  Session session(analysis, initial, coverage_report(analysis->universe, known));
  HttpService service(session, out / "ui");
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "serving " << report_path.filename().string() << " on http://" << host << ":" << port << "\n"
            << std::flush;
  if (!service.listen(host, port)) {
    g_service = nullptr;
    throw Error(ErrorKind::Io, "cannot listen on " + host + ":" + std::to_string(port));
  }
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recommend class partitions from use-case-labeled execution traces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", TRACEPART_VERSION);

  auto* partition = app.add_subcommand("partition", "Cluster classes and write reports");
  std::string manifest;
  std::optional<std::size_t> n;
  bool sweep = false;
  std::optional<std::string> known;
  std::string out;
  partition->add_option("--manifest", manifest, "Use-case manifest (JSON)")->required();
  auto* n_opt = partition->add_option("--n", n, "Target number of partitions")->check(CLI::PositiveNumber);
  partition->add_flag("--sweep", sweep, "Evaluate the standard range of partition counts")->excludes(n_opt);
  partition->add_option("--known-classes", known, "File listing every class of the application");
  partition->add_option("--out", out, "Output directory")->required();

  auto* metrics = app.add_subcommand("metrics", "Score a partition file against the traces");
  std::string partitions_file;
  std::string metrics_manifest;
  metrics->add_option("--partitions", partitions_file, "Report or partition JSON")->required();
  metrics->add_option("--manifest", metrics_manifest, "Use-case manifest (JSON)")->required();

  auto* serve = app.add_subcommand("serve", "Serve the refinement API for a partition run");
  std::string serve_out;
  int port = 0;
  std::string host = "127.0.0.1";
  std::optional<std::size_t> serve_n;
  serve->add_option("--out", serve_out, "Output directory of a partition run")->required();
  serve->add_option("--port", port, "TCP port")->required()->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--n", serve_n, "Which report-n<k>.json to load (default: smallest k)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*partition) {
      std::optional<fs::path> known_path;
      if (known) known_path = *known;
      return run_partition(manifest, n, sweep, known_path, out);
    }
    if (*metrics) return run_metrics(partitions_file, metrics_manifest);
    if (*serve) return run_serve(serve_out, host, port, serve_n);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
