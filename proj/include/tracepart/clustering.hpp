#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tracepart/features.hpp"

namespace tracepart {

/// One agglomeration step. `a` is the cluster whose smallest class id is
/// smaller; both member lists are ascending.
struct MergeRecord {
  std::vector<ClassId> a;
  std::vector<ClassId> b;
  double score = 0.0;

  bool operator==(const MergeRecord&) const = default;
};

/// Disjoint, non-empty class sets covering the universe. Partitions are
/// ordered by their smallest member and members are ascending.
struct Partitioning {
  std::vector<std::vector<ClassId>> partitions;
  std::size_t target_n = 0;
  std::vector<MergeRecord> merge_log;

  bool operator==(const Partitioning&) const = default;
};

/// Mean of S over all member pairs of two disjoint clusters. The sum runs over
/// the members of the cluster with the smaller smallest id in ascending order,
/// each row summed ascending over the other cluster, so the result is
/// bit-reproducible regardless of merge history.
double average_linkage(const SimilarityMatrix& s, std::span<const ClassId> a, std::span<const ClassId> b);

/// True when merge candidate (score1, lo1, hi1) is taken before (score2, lo2, hi2):
/// higher score first, then smaller (lo, hi) cluster keys.
inline bool merge_precedes(double score1, ClassId lo1, ClassId hi1, double score2, ClassId lo2, ClassId hi2) {
  if (score1 != score2) return score1 > score2;
  if (lo1 != lo2) return lo1 < lo2;
  return hi1 < hi2;
}

/// Greedy average-linkage agglomeration from singletons until `stop_at`
/// clusters remain (at least one).
std::vector<MergeRecord> agglomerate(const SimilarityMatrix& s, std::size_t stop_at = 1);

/// Clusters into max(n, 1) partitions, or singletons when n >= |C|.
/// Throws Error(InvalidTarget) for n < 1.
Partitioning cluster(const SimilarityMatrix& s, std::size_t n);

/// Cuts a full merge log (as returned by agglomerate(s, 1)) at n clusters.
Partitioning cut_dendrogram(std::size_t num_classes, std::span<const MergeRecord> full_log, std::size_t n);

/// Target cluster counts to evaluate for an application with `num_classes`
/// classes, descending. Throws Error(InvalidTarget) for num_classes < 2.
std::vector<std::size_t> sweep_sizes(std::size_t num_classes);

std::size_t default_target(std::size_t num_classes);

}  // namespace tracepart
