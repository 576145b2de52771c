#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tracepart/pipeline.hpp"

namespace tracepart {

struct MoveRecord {
  std::string class_name;
  std::size_t from = 0;
  std::size_t to = 0;

  bool operator==(const MoveRecord&) const = default;
};

/// Moves `cls` into partition `to`. `to == partitions.size()` opens a new
/// partition; a partition emptied by the move is removed and later indices
/// shift down by one. Returns the record, or nullopt for a no-op move.
/// Throws Error(InvalidMove) for an out-of-range target.
std::optional<MoveRecord> apply_move(Partitioning& p, const ClassUniverse& universe, ClassId cls, std::size_t to);

Partitioning replay_moves(Partitioning base, const ClassUniverse& universe, std::span<const MoveRecord> log);

/// Interactive refinement state over one analysis. Reads may run
/// concurrently; mutations are serialized and bump the revision.
class Session {
public:
  Session(std::shared_ptr<const Analysis> analysis, Partitioning initial, CoverageReport coverage);

  nlohmann::json state() const;
  nlohmann::json metrics() const;
  std::uint64_t revision() const;
  Partitioning partitioning() const;
  std::vector<MoveRecord> edit_log() const;
  const Analysis& analysis() const noexcept { return *analysis_; }

  /// Throws Error(InvalidMove) or Error(StaleRevision).
  nlohmann::json move(const std::string& class_name, std::size_t to, std::uint64_t revision);
  nlohmann::json reset(std::optional<std::uint64_t> revision = std::nullopt);
  /// Re-cuts the dendrogram at n; the result becomes the new baseline.
  nlohmann::json repartition(std::size_t n, std::optional<std::uint64_t> revision = std::nullopt);

private:
  void check_revision(std::optional<std::uint64_t> revision) const;
  void recompute();
  nlohmann::json state_locked() const;

  std::shared_ptr<const Analysis> analysis_;
  CoverageReport coverage_;
  mutable std::shared_mutex mutex_;
  Partitioning base_;
  Partitioning current_;
  MetricsReport metrics_;
  Explanation explanation_;
  std::vector<MoveRecord> edit_log_;
  std::uint64_t revision_ = 0;
};

}  // namespace tracepart
