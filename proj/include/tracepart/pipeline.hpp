#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tracepart/cct.hpp"
#include "tracepart/clustering.hpp"
#include "tracepart/explain.hpp"
#include "tracepart/features.hpp"
#include "tracepart/metrics.hpp"
#include "tracepart/trace.hpp"

namespace tracepart {

/// Everything derived from a corpus before a cluster count is chosen.
struct Analysis {
  TraceCorpus corpus;
  std::vector<UseCaseReduction> reductions;  // manifest order
  std::vector<ReducedPath> paths;            // all use cases, manifest order then sorted
  ReductionWarnings warnings;
  ClassUniverse universe;
  RelationIndex relations;
  SimilarityMatrix similarity;
  RuntimeCallGraph call_graph;
  std::vector<MergeRecord> dendrogram;  // full merge sequence down to one cluster
};

/// Reduces, indexes and clusters the corpus. Throws Error(ManifestInvalid)
/// when the traces contain no classes at all.
Analysis analyze(TraceCorpus corpus);

Partitioning partition_at(const Analysis& a, std::size_t n);

struct PartitionRequest {
  std::optional<std::size_t> n;
  bool sweep = false;
  std::optional<std::vector<std::string>> known_classes;
};

/// Cluster counts a request resolves to: the sweep (or the default target when
/// the sweep is empty), the explicit n, or the default target.
std::vector<std::size_t> resolve_targets(const Analysis& a, const PartitionRequest& req);

/// Writes report-n<k>.json/.txt per target plus matrix.json, merges.json,
/// paths.txt and inputs.json under `out_dir`. Returns the report paths.
std::vector<std::filesystem::path> write_partition_outputs(const std::filesystem::path& out_dir,
                                                           const std::filesystem::path& manifest,
                                                           const Analysis& a, const PartitionRequest& req);

}  // namespace tracepart
