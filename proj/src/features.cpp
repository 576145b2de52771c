#include "tracepart/features.hpp"

#include <algorithm>
#include <set>

namespace tracepart {

ClassUniverse ClassUniverse::from_paths(std::vector<UseCaseId> use_cases, std::span<const ReducedPath> paths) {
  ClassUniverse u;
  u.use_cases_ = std::move(use_cases);

  std::set<std::string> names;
  for (const auto& p : paths) names.insert(p.classes.begin(), p.classes.end());
  u.classes_.assign(names.begin(), names.end());
  for (std::size_t i = 0; i < u.classes_.size(); ++i) u.index_.emplace(u.classes_[i], static_cast<ClassId>(i));

  u.occurrence_.assign(u.classes_.size(), DynamicBitset(u.use_cases_.size()));
  for (const auto& p : paths) {
    const auto uc = u.use_case_index(p.use_case.label).value();
    for (const auto& c : p.classes) u.occurrence_[u.index_.at(c)].set(uc);
  }
  return u;
}

std::optional<ClassId> ClassUniverse::id_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<UseCaseIndex> ClassUniverse::use_case_index(std::string_view label) const {
  for (std::size_t i = 0; i < use_cases_.size(); ++i) {
    if (use_cases_[i].label == label) return i;
  }
  return std::nullopt;
}

RelationIndex::RelationIndex(std::size_t num_classes, std::size_t num_use_cases)
    : n_(num_classes),
      direct_(num_use_cases, BitMatrix(num_classes)),
      indirect_(num_use_cases, BitMatrix(num_classes)),
      direct_count_(num_classes * num_classes, 0),
      indirect_count_(num_classes * num_classes, 0) {}

void RelationIndex::add_direct(UseCaseIndex u, ClassId a, ClassId b) {
  if (a == b || direct_[u].test(a, b)) return;
  direct_[u].set(a, b);
  direct_[u].set(b, a);
  ++direct_count_[a * n_ + b];
  ++direct_count_[b * n_ + a];
}

void RelationIndex::add_indirect(UseCaseIndex u, ClassId a, ClassId b) {
  if (a == b || indirect_[u].test(a, b)) return;
  indirect_[u].set(a, b);
  indirect_[u].set(b, a);
  ++indirect_count_[a * n_ + b];
  ++indirect_count_[b * n_ + a];
}

std::vector<UseCaseIndex> RelationIndex::direct_use_cases(ClassId a, ClassId b) const {
  std::vector<UseCaseIndex> out;
  for (UseCaseIndex u = 0; u < direct_.size(); ++u) {
    if (direct_[u].test(a, b)) out.push_back(u);
  }
  return out;
}

std::vector<UseCaseIndex> RelationIndex::indirect_use_cases(ClassId a, ClassId b) const {
  std::vector<UseCaseIndex> out;
  for (UseCaseIndex u = 0; u < indirect_.size(); ++u) {
    if (indirect_[u].test(a, b)) out.push_back(u);
  }
  return out;
}

namespace {

std::map<ClassPair, std::vector<UseCaseIndex>> collect_pairs(const std::vector<BitMatrix>& rel, std::size_t n) {
  std::map<ClassPair, std::vector<UseCaseIndex>> out;
  for (UseCaseIndex u = 0; u < rel.size(); ++u) {
    for (ClassId a = 0; a < n; ++a) {
      for (ClassId b = a + 1; b < n; ++b) {
        if (rel[u].test(a, b)) out[{a, b}].push_back(u);
      }
    }
  }
  return out;
}

}  // namespace

std::map<ClassPair, std::vector<UseCaseIndex>> RelationIndex::direct_pairs() const {
  return collect_pairs(direct_, n_);
}

std::map<ClassPair, std::vector<UseCaseIndex>> RelationIndex::indirect_pairs() const {
  return collect_pairs(indirect_, n_);
}

RelationIndex index_relations(std::span<const ReducedPath> paths, const ClassUniverse& universe) {
  RelationIndex idx(universe.size(), universe.num_use_cases());
  std::vector<ClassId> ids;
  for (const auto& p : paths) {
    const auto u = universe.use_case_index(p.use_case.label).value();
    ids.clear();
    for (const auto& c : p.classes) ids.push_back(universe.id_of(c).value());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i + 1 < ids.size()) idx.add_direct(u, ids[i], ids[i + 1]);
      for (std::size_t j = i + 2; j < ids.size(); ++j) idx.add_indirect(u, ids[i], ids[j]);
    }
  }
  return idx;
}

namespace {

double union_size(ClassId a, ClassId b, const ClassUniverse& u) {
  return static_cast<double>(popcount_or(u.occurrence(a).words(), u.occurrence(b).words()));
}

// Sum over use cases of |partners(a) & partners(b)|. Use cases where either
// class is absent have empty rows and are skipped.
template <typename RowFn>
std::size_t shared_partner_count(ClassId a, ClassId b, const ClassUniverse& u, RowFn row) {
  const auto occ_a = u.occurrence(a).words();
  const auto occ_b = u.occurrence(b).words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < occ_a.size(); ++w) {
    for (auto bits = occ_a[w] & occ_b[w]; bits != 0; bits &= bits - 1) {
      const auto uc = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      total += popcount_and(row(uc, a), row(uc, b));
    }
  }
  return total;
}

double pattern_denominator(const ClassUniverse& u) {
  return static_cast<double>(u.size() - 2) * static_cast<double>(u.num_use_cases());
}

}  // namespace

double dcr(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u) {
  if (a == b) return 0.0;
  return static_cast<double>(idx.direct_count(a, b)) / union_size(a, b, u);
}

double icr(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u) {
  if (a == b) return 0.0;
  return static_cast<double>(idx.indirect_count(a, b)) / union_size(a, b, u);
}

double dcp(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u) {
  if (a == b || u.size() < 3) return 0.0;
  const auto shared = shared_partner_count(a, b, u, [&](UseCaseIndex uc, ClassId c) { return idx.direct_row(uc, c); });
  return static_cast<double>(shared) / pattern_denominator(u);
}

double icp_feature(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u) {
  if (a == b || u.size() < 3) return 0.0;
  const auto shared = shared_partner_count(a, b, u, [&](UseCaseIndex uc, ClassId c) { return idx.indirect_row(uc, c); });
  return static_cast<double>(shared) / pattern_denominator(u);
}

SimilarityMatrix similarity_matrix(const RelationIndex& idx, const ClassUniverse& u) {
  const auto n = u.size();
  SimilarityMatrix s(n);
  for (ClassId a = 0; a < n; ++a) {
    for (ClassId b = a + 1; b < n; ++b) {
      const double value = dcr(a, b, idx, u) + dcp(a, b, idx, u) + icr(a, b, idx, u) + icp_feature(a, b, idx, u);
      s.set_symmetric(a, b, value);
    }
  }
  return s;
}

}  // namespace tracepart
