#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tracepart/cct.hpp"
#include "tracepart/clustering.hpp"
#include "tracepart/features.hpp"

namespace tracepart {

/// Directed class-level call volumes summed over every CCT edge of every
/// use case. Edges out of the virtual Root are not calls between classes.
class RuntimeCallGraph {
public:
  using Edge = std::pair<ClassId, ClassId>;

  void add(ClassId from, ClassId to, std::uint64_t count);
  const std::map<Edge, std::uint64_t>& edges() const noexcept { return edges_; }
  std::uint64_t total_calls() const noexcept { return total_; }
  bool empty() const noexcept { return edges_.empty(); }

private:
  std::map<Edge, std::uint64_t> edges_;
  std::uint64_t total_ = 0;
};

RuntimeCallGraph build_call_graph(std::span<const UseCaseReduction> reductions, const ClassUniverse& universe);

/// partition index of every class id.
std::vector<std::size_t> partition_of(const Partitioning& p);

/// Structural modularity over distinct directed edges; higher is better.
double sm(const Partitioning& p, const RuntimeCallGraph& g);
/// Share of call volume crossing partitions; lower is better.
double icp_metric(const Partitioning& p, const RuntimeCallGraph& g);
/// Mean natural-log entropy of each partition's uniform use-case distribution.
double bcp(const Partitioning& p, const ClassUniverse& universe);
/// Mean number of externally invoked classes per partition.
double ifn(const Partitioning& p, const RuntimeCallGraph& g);
/// Share of classes in partitions whose size lies outside [5, 20].
double ned(const Partitioning& p);

struct PartitionStats {
  std::size_t size = 0;
  std::vector<UseCaseIndex> use_cases;  // ascending (manifest order)
  std::vector<ClassId> interfaces;      // ascending

  bool operator==(const PartitionStats&) const = default;
};

struct MetricsReport {
  double sm = 0.0;
  double icp = 0.0;
  double bcp = 0.0;
  double ifn = 0.0;
  double ned = 0.0;
  std::vector<PartitionStats> per_partition;

  bool operator==(const MetricsReport&) const = default;
};

MetricsReport evaluate(const Partitioning& p, const RuntimeCallGraph& g, const ClassUniverse& universe);

}  // namespace tracepart
