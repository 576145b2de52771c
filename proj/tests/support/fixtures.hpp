#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracle.hpp"
#include "tracepart/trace.hpp"

namespace fixtures {

namespace fs = std::filesystem;

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("tracepart-test-" + std::to_string(rd()) + "-" + std::to_string(++counter));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

inline void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// Raw trace lines that call `classes` as a nested chain and unwind.
inline std::vector<std::string> chain_lines(const std::vector<std::string>& classes, int thread = 1,
                                            int* clock = nullptr) {
  int local = 0;
  int& t = clock ? *clock : local;
  std::vector<std::string> lines;
  for (const auto& c : classes) {
    lines.push_back("t" + std::to_string(++t) + ",[" + std::to_string(thread) + "],Entering ... " + c + "::run");
  }
  for (auto it = classes.rbegin(); it != classes.rend(); ++it) {
    lines.push_back("t" + std::to_string(++t) + ",[" + std::to_string(thread) + "],Exiting ... " + *it + "::run");
  }
  return lines;
}

inline std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

/// In-memory corpus with one trace per path. Use cases without paths get a
/// single empty trace.
inline tracepart::TraceCorpus to_trace_corpus(const oracle::Corpus& c) {
  std::vector<tracepart::UseCaseTraces> ucs;
  for (const auto& u : c.use_cases) {
    tracepart::UseCaseTraces uc{tracepart::UseCaseId{u}, {}};
    int k = 0;
    for (const auto& p : c.paths) {
      if (p.use_case != u) continue;
      const auto name = u + "-" + std::to_string(k++);
      uc.streams.push_back({name, tracepart::parse_trace_text(join_lines(chain_lines(p.classes)), name)});
    }
    if (uc.streams.empty()) uc.streams.push_back({u + "-empty", {}});
    ucs.push_back(std::move(uc));
  }
  return tracepart::TraceCorpus(std::move(ucs));
}

/// Writes one trace file per path plus manifest.json; returns the manifest path.
inline fs::path write_corpus(const fs::path& dir, const oracle::Corpus& c) {
  nlohmann::json manifest;
  manifest["use_cases"] = nlohmann::json::array();
  for (const auto& u : c.use_cases) {
    nlohmann::json files = nlohmann::json::array();
    int k = 0;
    for (const auto& p : c.paths) {
      if (p.use_case != u) continue;
      const auto name = "traces/" + u + "-" + std::to_string(k++) + ".log";
      write_text(dir / name, join_lines(chain_lines(p.classes)));
      files.push_back(name);
    }
    if (files.empty()) {
      const auto name = "traces/" + u + "-empty.log";
      write_text(dir / name, "");
      files.push_back(name);
    }
    manifest["use_cases"].push_back({{"label", u}, {"trace_files", files}});
  }
  write_text(dir / "manifest.json", manifest.dump(2));
  return dir / "manifest.json";
}

/// Random corpus: up to `max_classes` classes named C0.., up to `max_use_cases`
/// use cases, 1..max_paths paths of length 1..5 with no repeated neighbours.
inline oracle::Corpus random_corpus(std::mt19937& rng, int max_classes = 8, int max_use_cases = 4, int max_paths = 6) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  oracle::Corpus c;
  const int nclasses = pick(1, max_classes);
  const int nucs = pick(1, max_use_cases);
  for (int u = 0; u < nucs; ++u) c.use_cases.push_back("u" + std::to_string(u));
  const int npaths = pick(1, max_paths);
  for (int i = 0; i < npaths; ++i) {
    oracle::Path p;
    p.use_case = c.use_cases[static_cast<std::size_t>(pick(0, nucs - 1))];
    const int len = pick(1, 5);
    while (static_cast<int>(p.classes.size()) < len) {
      auto cls = "C" + std::to_string(pick(0, nclasses - 1));
      if (nclasses > 1 && !p.classes.empty() && p.classes.back() == cls) continue;
      if (nclasses == 1 && !p.classes.empty()) break;
      p.classes.push_back(cls);
    }
    c.paths.push_back(std::move(p));
  }
  return c;
}

/// Reduced paths for a click_item and an update_item run of a pet store app.
inline oracle::Corpus petstore_corpus() {
  oracle::Corpus c;
  c.use_cases = {"click_item", "update_item"};
  c.paths = {
      {"click_item", {"ViewCategoryController", "PetStoreImpl", "SqlMapCategoryDao", "Category"}},
      {"update_item", {"UpdateCartQuantitiesController", "Cart"}},
      {"update_item", {"UpdateCartQuantitiesController", "CartItem"}},
      {"update_item", {"UpdateCartQuantitiesController", "Item"}},
  };
  return c;
}

}  // namespace fixtures
