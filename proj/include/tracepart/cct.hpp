#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tracepart/trace.hpp"

namespace tracepart {

inline constexpr std::string_view kRootLabel = "Root";

/// Class-level calling-context tree for one thread of one trace.
///
/// Node 0 is the virtual Root. A node never has two children with the same
/// label and never shares its parent's label; each non-root node carries the
/// number of raw invocations folded into the edge from its parent.
class ClassCct {
public:
  struct Node {
    std::string label;
    std::size_t parent = 0;
    std::uint64_t call_count = 0;  // parent -> this edge
    std::vector<std::size_t> children;
  };

  static constexpr std::size_t kRoot = 0;

  explicit ClassCct(std::uint64_t thread_id = 0);

  std::uint64_t thread_id() const noexcept { return thread_id_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t id) const { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Child of `parent` labeled `label`, created on first use. Increments the
  /// edge's call count either way.
  std::size_t enter_child(std::size_t parent, const std::string& label);

private:
  std::uint64_t thread_id_;
  std::vector<Node> nodes_;
};

/// Recoveries applied while pairing enter/exit events.
struct ReductionWarnings {
  std::size_t unmatched_exits = 0;     // Exiting with no open frame; dropped
  std::size_t implicitly_closed = 0;   // frames closed by end of trace or an outer exit

  ReductionWarnings& operator+=(const ReductionWarnings& o) {
    unmatched_exits += o.unmatched_exits;
    implicitly_closed += o.implicitly_closed;
    return *this;
  }
  std::size_t total() const { return unmatched_exits + implicitly_closed; }
};

/// Builds one tree per thread id (ascending) from a single trace in file order.
std::vector<ClassCct> build_ccts(std::span<const TraceEvent> events,
                                 ReductionWarnings* warnings = nullptr);

struct ReducedPath {
  UseCaseId use_case;
  std::vector<std::string> classes;  // Root excluded

  auto operator<=>(const ReducedPath&) const = default;
  bool operator==(const ReducedPath&) const = default;
};

/// Root-to-leaf class sequences of `ccts`, deduplicated and sorted.
std::vector<ReducedPath> extract_reduced_paths(std::span<const ClassCct> ccts,
                                               const UseCaseId& use_case);

/// Reduction of every trace file of a use case.
struct UseCaseReduction {
  UseCaseId use_case;
  std::vector<ClassCct> ccts;       // all threads of all files, in file order
  std::vector<ReducedPath> paths;   // unique across files, sorted
  ReductionWarnings warnings;
};

UseCaseReduction reduce_use_case(const UseCaseTraces& traces);

/// `<use_case>, Root, <c1>, <c2>, ...`
std::string format_path_line(const ReducedPath& path);

}  // namespace tracepart
