#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracepart/bitset.hpp"
#include "tracepart/cct.hpp"
#include "tracepart/trace.hpp"

namespace tracepart {

using ClassId = std::uint32_t;
using UseCaseIndex = std::size_t;

/// Observed classes in name order plus the use cases each one occurs in.
/// Class ids are positions in that order, so id order is name order.
class ClassUniverse {
public:
  ClassUniverse() = default;

  /// `use_cases` fixes |U| and the index of each label; classes and
  /// occurrences come from the paths. Paths must only name listed use cases.
  static ClassUniverse from_paths(std::vector<UseCaseId> use_cases, std::span<const ReducedPath> paths);

  std::size_t size() const noexcept { return classes_.size(); }
  std::size_t num_use_cases() const noexcept { return use_cases_.size(); }

  const std::vector<std::string>& classes() const noexcept { return classes_; }
  const std::string& name(ClassId id) const { return classes_.at(id); }
  std::optional<ClassId> id_of(std::string_view name) const;

  const std::vector<UseCaseId>& use_cases() const noexcept { return use_cases_; }
  std::optional<UseCaseIndex> use_case_index(std::string_view label) const;

  const DynamicBitset& occurrence(ClassId id) const { return occurrence_.at(id); }

private:
  std::vector<std::string> classes_;
  std::unordered_map<std::string, ClassId> index_;
  std::vector<UseCaseId> use_cases_;
  std::vector<DynamicBitset> occurrence_;
};

/// Unordered class pair, `first < second`.
using ClassPair = std::pair<ClassId, ClassId>;
inline ClassPair make_pair_key(ClassId a, ClassId b) { return a < b ? ClassPair{a, b} : ClassPair{b, a}; }

/// Per use case, which class pairs are adjacent on some reduced path
/// (direct) and which are separated by at least one intermediary (indirect).
/// Pairs are undirected and never pair a class with itself.
class RelationIndex {
public:
  RelationIndex() = default;
  RelationIndex(std::size_t num_classes, std::size_t num_use_cases);

  std::size_t num_classes() const noexcept { return n_; }
  std::size_t num_use_cases() const noexcept { return direct_.size(); }

  void add_direct(UseCaseIndex u, ClassId a, ClassId b);
  void add_indirect(UseCaseIndex u, ClassId a, ClassId b);

  bool direct(UseCaseIndex u, ClassId a, ClassId b) const { return direct_[u].test(a, b); }
  bool indirect(UseCaseIndex u, ClassId a, ClassId b) const { return indirect_[u].test(a, b); }

  /// |U_{a<->b}| and |U_{a<=>b}|.
  std::uint32_t direct_count(ClassId a, ClassId b) const { return direct_count_[a * n_ + b]; }
  std::uint32_t indirect_count(ClassId a, ClassId b) const { return indirect_count_[a * n_ + b]; }

  std::vector<UseCaseIndex> direct_use_cases(ClassId a, ClassId b) const;
  std::vector<UseCaseIndex> indirect_use_cases(ClassId a, ClassId b) const;

  std::span<const std::uint64_t> direct_row(UseCaseIndex u, ClassId a) const { return direct_[u].row(a); }
  std::span<const std::uint64_t> indirect_row(UseCaseIndex u, ClassId a) const { return indirect_[u].row(a); }

  std::map<ClassPair, std::vector<UseCaseIndex>> direct_pairs() const;
  std::map<ClassPair, std::vector<UseCaseIndex>> indirect_pairs() const;

private:
  std::size_t n_ = 0;
  std::vector<BitMatrix> direct_;
  std::vector<BitMatrix> indirect_;
  std::vector<std::uint32_t> direct_count_;
  std::vector<std::uint32_t> indirect_count_;
};

RelationIndex index_relations(std::span<const ReducedPath> paths, const ClassUniverse& universe);

double dcr(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u);
double icr(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u);
double dcp(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u);
/// Indirect call pattern: shared indirect partners, normalized like dcp.
double icp_feature(ClassId a, ClassId b, const RelationIndex& idx, const ClassUniverse& u);

/// Symmetric |C| x |C| matrix, zero diagonal, entries in [0, 4].
class SimilarityMatrix {
public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  void set_symmetric(std::size_t i, std::size_t j, double v) {
    values_[i * n_ + j] = v;
    values_[j * n_ + i] = v;
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * n_, n_);
  }

private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// S = DCR + DCP + ICR + ICP for every pair, summed in that order.
SimilarityMatrix similarity_matrix(const RelationIndex& idx, const ClassUniverse& u);

}  // namespace tracepart
