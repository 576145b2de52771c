#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tracepart/clustering.hpp"
#include "tracepart/features.hpp"

namespace tracepart {

/// Use cases a class is invoked under, in manifest order.
using UseCaseTuple = std::vector<UseCaseIndex>;

struct TupleCount {
  UseCaseTuple tuple;
  std::size_t count = 0;

  bool operator==(const TupleCount&) const = default;
};

struct PartitionExplanation {
  std::vector<TupleCount> tuples;     // distinct tuples, lexicographic by manifest order
  std::vector<UseCaseIndex> use_cases;  // union of the tuples

  bool operator==(const PartitionExplanation&) const = default;
};

struct Explanation {
  std::vector<UseCaseTuple> per_class;  // indexed by ClassId
  std::vector<PartitionExplanation> per_partition;

  bool operator==(const Explanation&) const = default;
};

Explanation explain(const Partitioning& p, const ClassUniverse& universe);

struct CoverageReport {
  std::size_t observed_classes = 0;
  std::optional<std::size_t> total_known_classes;
  std::optional<double> class_coverage_ratio;      // observed / known
  std::optional<std::size_t> class_coverage_percent;  // truncated to a whole percent
  std::vector<std::string> unobserved;      // known but never traced
  std::vector<std::string> unknown_observed;  // traced but not in the known list
};

/// Throws Error(KnownClassListInvalid) on duplicate or empty known lists.
CoverageReport coverage_report(const ClassUniverse& universe,
                               const std::optional<std::vector<std::string>>& known_classes);

/// One class name per line; blank lines and lines starting with '#' are skipped.
std::vector<std::string> read_known_classes(const std::filesystem::path& path);

}  // namespace tracepart
