#include "tracepart/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tracepart/error.hpp"

namespace tracepart {

double average_linkage(const SimilarityMatrix& s, std::span<const ClassId> a, std::span<const ClassId> b) {
  if (b.front() < a.front()) std::swap(a, b);
  double total = 0.0;
  for (auto i : a) {
    const auto row = s.row(i);
    double partial = 0.0;
    for (auto j : b) partial += row[j];
    total += partial;
  }
  return total / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Slot i starts as class i. A merge keeps the lower slot, so a slot's index is
// always the smallest class id it contains and doubles as its tie-break key.
class Agglomerator {
public:
  explicit Agglomerator(const SimilarityMatrix& s)
      : s_(s), n_(s.size()), members_(n_), active_(n_, true), link_(n_ * n_, 0.0), best_(n_, kNone) {
    for (std::size_t i = 0; i < n_; ++i) members_[i] = {static_cast<ClassId>(i)};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) link_[i * n_ + j] = s.at(i, j);
    }
    for (std::size_t i = 0; i < n_; ++i) rescan(i);
    remaining_ = n_;
  }

  std::vector<MergeRecord> run(std::size_t stop_at) {
    std::vector<MergeRecord> log;
    while (remaining_ > std::max<std::size_t>(stop_at, 1)) log.push_back(step());
    return log;
  }

private:
  bool better(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return merge_precedes(link_[i * n_ + j], static_cast<ClassId>(std::min(i, j)), static_cast<ClassId>(std::max(i, j)),
                          link_[k * n_ + l], static_cast<ClassId>(std::min(k, l)), static_cast<ClassId>(std::max(k, l)));
  }

  void rescan(std::size_t i) {
    best_[i] = kNone;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i || !active_[j]) continue;
      if (best_[i] == kNone || better(i, j, i, best_[i])) best_[i] = j;
    }
  }

  MergeRecord step() {
    std::size_t lo = kNone;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!active_[i] || best_[i] == kNone) continue;
      if (lo == kNone || better(i, best_[i], lo, best_[lo])) lo = i;
    }
    std::size_t hi = best_[lo];
    if (hi < lo) std::swap(lo, hi);

    MergeRecord rec{members_[lo], members_[hi], link_[lo * n_ + hi]};
    std::vector<ClassId> merged;
    merged.reserve(members_[lo].size() + members_[hi].size());
    std::merge(members_[lo].begin(), members_[lo].end(), members_[hi].begin(), members_[hi].end(),
               std::back_inserter(merged));
    members_[lo] = std::move(merged);
    members_[hi].clear();
    active_[hi] = false;
    --remaining_;

    for (std::size_t x = 0; x < n_; ++x) {
      if (!active_[x] || x == lo) continue;
      const double v = average_linkage(s_, members_[lo], members_[x]);
      link_[lo * n_ + x] = v;
      link_[x * n_ + lo] = v;
    }
    for (std::size_t x = 0; x < n_; ++x) {
      if (!active_[x] || x == lo) continue;
      if (best_[x] == lo || best_[x] == hi) {
        rescan(x);
      } else if (better(x, lo, x, best_[x])) {
        best_[x] = lo;
      }
    }
    rescan(lo);
    best_[hi] = kNone;
    return rec;
  }

  const SimilarityMatrix& s_;
  std::size_t n_;
  std::vector<std::vector<ClassId>> members_;
  std::vector<bool> active_;
  std::vector<double> link_;
  std::vector<std::size_t> best_;
  std::size_t remaining_ = 0;
};

}  // namespace

std::vector<MergeRecord> agglomerate(const SimilarityMatrix& s, std::size_t stop_at) {
  if (s.size() == 0) return {};
  return Agglomerator(s).run(stop_at);
}

Partitioning cut_dendrogram(std::size_t num_classes, std::span<const MergeRecord> full_log, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidTarget, "cluster count must be at least 1");
  Partitioning p;
  p.target_n = n;
  const std::size_t merges = n >= num_classes ? 0 : num_classes - n;
  if (merges > full_log.size()) {
    throw Error(ErrorKind::InvalidTarget, "merge log too short for n=" + std::to_string(n));
  }
  p.merge_log.assign(full_log.begin(), full_log.begin() + static_cast<std::ptrdiff_t>(merges));

  // Union-find over class ids; the representative is the smallest id.
  std::vector<ClassId> parent(num_classes);
  for (std::size_t i = 0; i < num_classes; ++i) parent[i] = static_cast<ClassId>(i);
  auto find = [&](ClassId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : p.merge_log) {
    const auto ra = find(m.a.front());
    const auto rb = find(m.b.front());
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<ClassId>> groups(num_classes);
  for (std::size_t i = 0; i < num_classes; ++i) groups[find(static_cast<ClassId>(i))].push_back(static_cast<ClassId>(i));
  for (auto& g : groups) {
    if (!g.empty()) p.partitions.push_back(std::move(g));
  }
  return p;
}

Partitioning cluster(const SimilarityMatrix& s, std::size_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidTarget, "cluster count must be at least 1");
  const auto log = agglomerate(s, n);
  return cut_dendrogram(s.size(), log, n);
}

std::vector<std::size_t> sweep_sizes(std::size_t num_classes) {
  if (num_classes < 2) throw Error(ErrorKind::InvalidTarget, "sweep needs at least 2 classes");
  std::vector<std::size_t> out;
  if (num_classes >= 100) {
    for (std::size_t v = num_classes / 2; v >= 2; v /= 2) out.push_back(v);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  // Small applications: N/2, then subtract 2, 4, 8, ...
  std::size_t step = 2;
  for (std::size_t v = num_classes / 2; v >= 2; step *= 2) {
    out.push_back(v);
    if (v < step + 2) break;
    v -= step;
  }
  return out;
}

std::size_t default_target(std::size_t num_classes) {
  return std::min<std::size_t>(5, num_classes);
}

}  // namespace tracepart
