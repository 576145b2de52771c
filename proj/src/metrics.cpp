#include "tracepart/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tracepart {

void RuntimeCallGraph::add(ClassId from, ClassId to, std::uint64_t count) {
  if (from == to || count == 0) return;
  edges_[{from, to}] += count;
  total_ += count;
}

RuntimeCallGraph build_call_graph(std::span<const UseCaseReduction> reductions, const ClassUniverse& universe) {
  RuntimeCallGraph g;
  for (const auto& r : reductions) {
    for (const auto& tree : r.ccts) {
      for (const auto& node : tree.nodes()) {
        if (node.parent == ClassCct::kRoot) continue;  // Root itself and top-level entries
        const auto from = universe.id_of(tree.node(node.parent).label);
        const auto to = universe.id_of(node.label);
        if (from && to) g.add(*from, *to, node.call_count);
      }
    }
  }
  return g;
}

std::vector<std::size_t> partition_of(const Partitioning& p) {
  std::size_t n = 0;
  for (const auto& part : p.partitions) {
    for (auto c : part) n = std::max<std::size_t>(n, c + 1);
  }
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < p.partitions.size(); ++i) {
    for (auto c : p.partitions[i]) out[c] = i;
  }
  return out;
}

double sm(const Partitioning& p, const RuntimeCallGraph& g) {
  const auto m = p.partitions.size();
  if (m == 0) return 0.0;
  const auto where = partition_of(p);

  std::vector<double> inside(m, 0.0);
  std::map<std::pair<std::size_t, std::size_t>, double> between;
  for (const auto& [edge, count] : g.edges()) {
    const auto pa = where[edge.first];
    const auto pb = where[edge.second];
    if (pa == pb) {
      inside[pa] += 1.0;
    } else {
      between[{std::min(pa, pb), std::max(pa, pb)}] += 1.0;
    }
  }

  double cohesion = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto size = static_cast<double>(p.partitions[i].size());
    cohesion += inside[i] / (size * size);
  }
  cohesion /= static_cast<double>(m);
  if (m == 1) return cohesion;

  double coupling = 0.0;
  for (const auto& [key, sigma] : between) {
    const auto mi = static_cast<double>(p.partitions[key.first].size());
    const auto mj = static_cast<double>(p.partitions[key.second].size());
    coupling += sigma / (2.0 * mi * mj);
  }
  const auto pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return cohesion - coupling / pairs;
}

double icp_metric(const Partitioning& p, const RuntimeCallGraph& g) {
  if (p.partitions.size() <= 1 || g.total_calls() == 0) return 0.0;
  const auto where = partition_of(p);
  std::uint64_t crossing = 0;
  for (const auto& [edge, count] : g.edges()) {
    if (where[edge.first] != where[edge.second]) crossing += count;
  }
  return static_cast<double>(crossing) / static_cast<double>(g.total_calls());
}

namespace {

std::vector<UseCaseIndex> partition_use_cases(const std::vector<ClassId>& part, const ClassUniverse& universe) {
  DynamicBitset all(universe.num_use_cases());
  for (auto c : part) all |= universe.occurrence(c);
  return all.indices();
}

std::vector<std::vector<ClassId>> interfaces_by_partition(const Partitioning& p, const RuntimeCallGraph& g) {
  const auto where = partition_of(p);
  std::vector<std::set<ClassId>> found(p.partitions.size());
  for (const auto& [edge, count] : g.edges()) {
    if (where[edge.first] != where[edge.second]) found[where[edge.second]].insert(edge.second);
  }
  std::vector<std::vector<ClassId>> out;
  out.reserve(found.size());
  for (const auto& s : found) out.emplace_back(s.begin(), s.end());
  return out;
}

}  // namespace

double bcp(const Partitioning& p, const ClassUniverse& universe) {
  if (p.partitions.empty()) return 0.0;
  double total = 0.0;
  for (const auto& part : p.partitions) {
    const auto k = partition_use_cases(part, universe).size();
    if (k > 0) total += std::log(static_cast<double>(k));
  }
  return total / static_cast<double>(p.partitions.size());
}

double ifn(const Partitioning& p, const RuntimeCallGraph& g) {
  if (p.partitions.empty()) return 0.0;
  double total = 0.0;
  for (const auto& iface : interfaces_by_partition(p, g)) total += static_cast<double>(iface.size());
  return total / static_cast<double>(p.partitions.size());
}

double ned(const Partitioning& p) {
  std::size_t total = 0;
  std::size_t non_extreme = 0;
  for (const auto& part : p.partitions) {
    total += part.size();
    if (part.size() >= 5 && part.size() <= 20) non_extreme += part.size();
  }
  if (total == 0) return 0.0;
  return 1.0 - static_cast<double>(non_extreme) / static_cast<double>(total);
}

MetricsReport evaluate(const Partitioning& p, const RuntimeCallGraph& g, const ClassUniverse& universe) {
  MetricsReport r;
  r.sm = sm(p, g);
  r.icp = icp_metric(p, g);
  r.bcp = bcp(p, universe);
  r.ifn = ifn(p, g);
  r.ned = ned(p);
  const auto interfaces = interfaces_by_partition(p, g);
  for (std::size_t i = 0; i < p.partitions.size(); ++i) {
    r.per_partition.push_back(PartitionStats{p.partitions[i].size(), partition_use_cases(p.partitions[i], universe),
                                             interfaces[i]});
  }
  return r;
}

}  // namespace tracepart
