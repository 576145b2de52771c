#include "tracepart/cct.hpp"

#include <algorithm>
#include <map>

namespace tracepart {

ClassCct::ClassCct(std::uint64_t thread_id) : thread_id_(thread_id) {
  nodes_.push_back(Node{std::string(kRootLabel), kRoot, 0, {}});
}

std::size_t ClassCct::enter_child(std::size_t parent, const std::string& label) {
  for (auto child : nodes_[parent].children) {
    if (nodes_[child].label == label) {
      ++nodes_[child].call_count;
      return child;
    }
  }
  const auto id = nodes_.size();
  nodes_.push_back(Node{label, parent, 1, {}});
  nodes_[parent].children.push_back(id);
  return id;
}

namespace {

struct Frame {
  const TraceEvent* event;
  std::size_t node;
};

// Replays one thread's events on a stack. A call into the class already on
// top of the stack stays on the same node.
void simulate_thread(ClassCct& tree, const std::vector<const TraceEvent*>& events,
                     ReductionWarnings& warnings) {
  std::vector<Frame> stack;
  for (const auto* ev : events) {
    if (ev->direction == Direction::Entering) {
      const auto parent = stack.empty() ? ClassCct::kRoot : stack.back().node;
      std::size_t node = parent;
      if (stack.empty() || tree.node(parent).label != ev->class_name) {
        node = tree.enter_child(parent, ev->class_name);
      }
      stack.push_back(Frame{ev, node});
      continue;
    }

    auto match = std::find_if(stack.rbegin(), stack.rend(), [&](const Frame& f) {
      return f.event->class_name == ev->class_name && f.event->method_name == ev->method_name;
    });
    if (match == stack.rend()) {
      ++warnings.unmatched_exits;
      continue;
    }
    const auto keep = static_cast<std::size_t>(stack.rend() - match) - 1;
    warnings.implicitly_closed += stack.size() - keep - 1;
    stack.resize(keep);
  }
  warnings.implicitly_closed += stack.size();
}

}  // namespace

std::vector<ClassCct> build_ccts(std::span<const TraceEvent> events, ReductionWarnings* warnings) {
  std::map<std::uint64_t, std::vector<const TraceEvent*>> by_thread;
  for (const auto& ev : events) by_thread[ev.thread_id].push_back(&ev);

  ReductionWarnings local;
  std::vector<ClassCct> trees;
  trees.reserve(by_thread.size());
  for (const auto& [tid, thread_events] : by_thread) {
    ClassCct tree(tid);
    simulate_thread(tree, thread_events, local);
    trees.push_back(std::move(tree));
  }
  if (warnings) *warnings += local;
  return trees;
}

std::vector<ReducedPath> extract_reduced_paths(std::span<const ClassCct> ccts,
                                               const UseCaseId& use_case) {
  std::vector<ReducedPath> paths;
  for (const auto& tree : ccts) {
    std::vector<std::string> prefix;
    // Iterative DFS; the second member is the next child to visit.
    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (auto top : tree.node(ClassCct::kRoot).children) {
      todo.emplace_back(top, 0);
      prefix.push_back(tree.node(top).label);
      while (!todo.empty()) {
        auto& [node, next] = todo.back();
        const auto& children = tree.node(node).children;
        if (children.empty()) paths.push_back(ReducedPath{use_case, prefix});
        if (next < children.size()) {
          const auto child = children[next++];
          todo.emplace_back(child, 0);
          prefix.push_back(tree.node(child).label);
        } else {
          todo.pop_back();
          prefix.pop_back();
        }
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  return paths;
}

UseCaseReduction reduce_use_case(const UseCaseTraces& traces) {
  UseCaseReduction out;
  out.use_case = traces.id;
  for (const auto& stream : traces.streams) {
    auto trees = build_ccts(stream.events, &out.warnings);
    for (auto& t : trees) out.ccts.push_back(std::move(t));
  }
  out.paths = extract_reduced_paths(out.ccts, traces.id);
  return out;
}

std::string format_path_line(const ReducedPath& path) {
  std::string line = path.use_case.label;
  line += ", ";
  line += kRootLabel;
  for (const auto& c : path.classes) {
    line += ", ";
    line += c;
  }
  return line;
}

}  // namespace tracepart
