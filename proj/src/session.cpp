#include "tracepart/session.hpp"

#include <algorithm>
#include <mutex>

#include "tracepart/error.hpp"
#include "tracepart/report.hpp"

namespace tracepart {

std::optional<MoveRecord> apply_move(Partitioning& p, const ClassUniverse& universe, ClassId cls, std::size_t to) {
  if (to > p.partitions.size()) {
    throw Error(ErrorKind::InvalidMove, "no partition " + std::to_string(to) + " (have " +
                                            std::to_string(p.partitions.size()) + ")");
  }
  const auto where = partition_of(p);
  if (cls >= where.size()) throw Error(ErrorKind::InvalidMove, "unknown class id");
  const auto from = where[cls];
  if (from == to) return std::nullopt;
  // Moving a singleton out into a fresh partition changes nothing.
  if (to == p.partitions.size() && p.partitions[from].size() == 1) return std::nullopt;

  if (to == p.partitions.size()) p.partitions.emplace_back();
  auto& target = p.partitions[to];
  target.insert(std::upper_bound(target.begin(), target.end(), cls), cls);
  auto& source = p.partitions[from];
  source.erase(std::find(source.begin(), source.end(), cls));
  if (source.empty()) p.partitions.erase(p.partitions.begin() + static_cast<std::ptrdiff_t>(from));
  p.merge_log.clear();
  return MoveRecord{universe.name(cls), from, to};
}

Partitioning replay_moves(Partitioning base, const ClassUniverse& universe, std::span<const MoveRecord> log) {
  for (const auto& m : log) {
    const auto id = universe.id_of(m.class_name);
    if (!id) throw Error(ErrorKind::InvalidMove, "unknown class \"" + m.class_name + "\"");
    apply_move(base, universe, *id, m.to);
  }
  return base;
}

Session::Session(std::shared_ptr<const Analysis> analysis, Partitioning initial, CoverageReport coverage)
    : analysis_(std::move(analysis)), coverage_(std::move(coverage)), base_(std::move(initial)), current_(base_) {
  recompute();
}

void Session::recompute() {
  metrics_ = evaluate(current_, analysis_->call_graph, analysis_->universe);
  explanation_ = explain(current_, analysis_->universe);
}

nlohmann::json Session::state_locked() const {
  auto doc = report_json(*analysis_, current_, metrics_, explanation_, coverage_);
  doc["merge_count"] = base_.merge_log.size();
  doc["revision"] = revision_;
  nlohmann::json log = nlohmann::json::array();
  for (const auto& m : edit_log_) log.push_back({{"class", m.class_name}, {"from", m.from}, {"to", m.to}});
  doc["edit_log"] = std::move(log);
  return doc;
}

nlohmann::json Session::state() const {
  std::shared_lock lock(mutex_);
  return state_locked();
}

nlohmann::json Session::metrics() const {
  std::shared_lock lock(mutex_);
  return metrics_json(metrics_, current_, analysis_->universe);
}

std::uint64_t Session::revision() const {
  std::shared_lock lock(mutex_);
  return revision_;
}

Partitioning Session::partitioning() const {
  std::shared_lock lock(mutex_);
  return current_;
}

std::vector<MoveRecord> Session::edit_log() const {
  std::shared_lock lock(mutex_);
  return edit_log_;
}

void Session::check_revision(std::optional<std::uint64_t> revision) const {
  if (revision && *revision != revision_) {
    throw Error(ErrorKind::StaleRevision,
                "revision " + std::to_string(*revision) + " is stale (current " + std::to_string(revision_) + ")");
  }
}

nlohmann::json Session::move(const std::string& class_name, std::size_t to, std::uint64_t revision) {
  std::unique_lock lock(mutex_);
  check_revision(revision);
  const auto id = analysis_->universe.id_of(class_name);
  if (!id) throw Error(ErrorKind::InvalidMove, "unknown class \"" + class_name + "\"");
  if (auto rec = apply_move(current_, analysis_->universe, *id, to)) {
    edit_log_.push_back(std::move(*rec));
    ++revision_;
    recompute();
  }
  return state_locked();
}

nlohmann::json Session::reset(std::optional<std::uint64_t> revision) {
  std::unique_lock lock(mutex_);
  check_revision(revision);
  current_ = base_;
  edit_log_.clear();
  ++revision_;
  recompute();
  return state_locked();
}

nlohmann::json Session::repartition(std::size_t n, std::optional<std::uint64_t> revision) {
  std::unique_lock lock(mutex_);
  check_revision(revision);
  base_ = partition_at(*analysis_, n);
  current_ = base_;
  edit_log_.clear();
  ++revision_;
  recompute();
  return state_locked();
}

}  // namespace tracepart
