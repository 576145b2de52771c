#include "tracepart/explain.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "tracepart/error.hpp"

namespace tracepart {

Explanation explain(const Partitioning& p, const ClassUniverse& universe) {
  Explanation out;
  out.per_class.resize(universe.size());
  for (ClassId c = 0; c < universe.size(); ++c) out.per_class[c] = universe.occurrence(c).indices();

  for (const auto& part : p.partitions) {
    std::map<UseCaseTuple, std::size_t> counts;
    std::set<UseCaseIndex> all;
    for (auto c : part) {
      const auto& tuple = out.per_class.at(c);
      ++counts[tuple];
      all.insert(tuple.begin(), tuple.end());
    }
    PartitionExplanation pe;
    for (auto& [tuple, count] : counts) pe.tuples.push_back(TupleCount{tuple, count});
    pe.use_cases.assign(all.begin(), all.end());
    out.per_partition.push_back(std::move(pe));
  }
  return out;
}

CoverageReport coverage_report(const ClassUniverse& universe,
                               const std::optional<std::vector<std::string>>& known_classes) {
  CoverageReport r;
  r.observed_classes = universe.size();
  if (!known_classes) return r;

  std::set<std::string> known;
  for (const auto& k : *known_classes) {
    if (!known.insert(k).second) throw Error(ErrorKind::KnownClassListInvalid, "duplicate class \"" + k + "\"");
  }
  if (known.empty()) throw Error(ErrorKind::KnownClassListInvalid, "empty known-class list");

  r.total_known_classes = known.size();
  r.class_coverage_ratio = static_cast<double>(r.observed_classes) / static_cast<double>(known.size());
  r.class_coverage_percent = r.observed_classes * 100 / known.size();
  for (const auto& k : known) {
    if (!universe.id_of(k)) r.unobserved.push_back(k);
  }
  for (const auto& c : universe.classes()) {
    if (!known.contains(c)) r.unknown_observed.push_back(c);
  }
  return r;
}

std::vector<std::string> read_known_classes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::KnownClassListInvalid, "cannot open " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace tracepart
