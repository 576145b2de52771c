#include "tracepart/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "tracepart/error.hpp"
#include "tracepart/pipeline.hpp"

namespace tracepart {

using nlohmann::json;

std::string format_fixed6(double value) {
  // glibc printf rounds the exact binary value, so exact decimal ties go to even.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

double round6(double value) {
  const double r = std::strtod(format_fixed6(value).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

namespace {

json labels(const ClassUniverse& universe, const std::vector<UseCaseIndex>& ids) {
  json out = json::array();
  for (auto u : ids) out.push_back(universe.use_cases().at(u).label);
  return out;
}

json names(const ClassUniverse& universe, const std::vector<ClassId>& ids) {
  json out = json::array();
  for (auto c : ids) out.push_back(universe.name(c));
  return out;
}

std::string tuple_text(const ClassUniverse& universe, const std::vector<UseCaseIndex>& ids) {
  std::string s = "<";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ", ";
    s += universe.use_cases().at(ids[i]).label;
  }
  return s + ">";
}

json coverage_json(const CoverageReport& c) {
  json out;
  out["observed_classes"] = c.observed_classes;
  if (c.total_known_classes) {
    out["total_known_classes"] = *c.total_known_classes;
    out["class_coverage_ratio"] = round6(*c.class_coverage_ratio);
    out["class_coverage_percent"] = *c.class_coverage_percent;
    out["unobserved"] = c.unobserved;
    out["unknown_observed"] = c.unknown_observed;
  }
  return out;
}

}  // namespace

json metrics_json(const MetricsReport& m, const Partitioning& p, const ClassUniverse& universe) {
  json out;
  out["sm"] = round6(m.sm);
  out["icp"] = round6(m.icp);
  out["bcp"] = round6(m.bcp);
  out["ifn"] = round6(m.ifn);
  out["ned"] = round6(m.ned);
  json parts = json::array();
  for (std::size_t i = 0; i < p.partitions.size(); ++i) {
    json part;
    part["classes"] = names(universe, p.partitions[i]);
    part["use_cases"] = labels(universe, m.per_partition.at(i).use_cases);
    part["interfaces"] = names(universe, m.per_partition.at(i).interfaces);
    parts.push_back(std::move(part));
  }
  out["partitions"] = std::move(parts);
  return out;
}

json report_json(const Analysis& a, const Partitioning& p, const MetricsReport& m, const Explanation& e,
                 const CoverageReport& coverage) {
  const auto& u = a.universe;
  json out;
  out["tool"] = {{"name", "tracepart"}, {"version", TRACEPART_VERSION}};
  out["corpus_digest"] = a.corpus.digest();
  json ucs = json::array();
  for (const auto& id : u.use_cases()) ucs.push_back(id.label);
  out["use_cases"] = std::move(ucs);
  out["n"] = p.target_n;
  json parts = json::array();
  for (const auto& part : p.partitions) parts.push_back(names(u, part));
  out["partitions"] = std::move(parts);
  out["merge_count"] = p.merge_log.size();
  out["metrics"] = metrics_json(m, p, u);

  json classes = json::array();
  for (ClassId c = 0; c < u.size(); ++c) {
    classes.push_back({{"class", u.name(c)}, {"use_cases", labels(u, e.per_class.at(c))}});
  }
  json summaries = json::array();
  for (std::size_t i = 0; i < e.per_partition.size(); ++i) {
    json tuples = json::array();
    for (const auto& t : e.per_partition[i].tuples) {
      tuples.push_back({{"use_cases", labels(u, t.tuple)}, {"count", t.count}});
    }
    summaries.push_back({{"index", i}, {"use_cases", labels(u, e.per_partition[i].use_cases)}, {"tuples", tuples}});
  }
  out["explanation"] = {{"classes", classes}, {"partitions", summaries}};
  out["coverage"] = coverage_json(coverage);
  out["warnings"] = {{"unmatched_exits", a.warnings.unmatched_exits},
                     {"implicitly_closed", a.warnings.implicitly_closed}};
  return out;
}

std::string render_text(const Analysis& a, const Partitioning& p, const MetricsReport& m, const Explanation& e,
                        const CoverageReport& coverage) {
  const auto& u = a.universe;
  std::ostringstream os;
  os << "tracepart " << TRACEPART_VERSION << "  n=" << p.target_n << "  classes=" << u.size()
     << "  use cases=" << u.num_use_cases() << "\n\n";
  for (std::size_t i = 0; i < p.partitions.size(); ++i) {
    const auto& stats = m.per_partition.at(i);
    os << "Partition " << i << " (" << stats.size << " classes) "
       << tuple_text(u, e.per_partition.at(i).use_cases) << "\n";
    const std::set<ClassId> ifaces(stats.interfaces.begin(), stats.interfaces.end());
    for (auto c : p.partitions[i]) {
      os << "  " << u.name(c) << "  " << tuple_text(u, e.per_class.at(c));
      if (ifaces.contains(c)) os << "  [interface]";
      os << "\n";
    }
    os << "\n";
  }
  os << "SM  " << format_fixed6(m.sm) << "\n"
     << "ICP " << format_fixed6(m.icp) << "\n"
     << "BCP " << format_fixed6(m.bcp) << "\n"
     << "IFN " << format_fixed6(m.ifn) << "\n"
     << "NED " << format_fixed6(m.ned) << "\n";
  os << "\nObserved classes: " << coverage.observed_classes;
  if (coverage.total_known_classes) {
    os << " of " << *coverage.total_known_classes << " (" << *coverage.class_coverage_percent << "%)";
  }
  os << "\n";
  for (const auto& c : coverage.unknown_observed) os << "warning: unknown-observed class " << c << "\n";
  if (a.warnings.total() > 0) {
    os << "warning: " << a.warnings.unmatched_exits << " unmatched exits dropped, " << a.warnings.implicitly_closed
       << " frames implicitly closed\n";
  }
  return os.str();
}

json matrix_json(const ClassUniverse& universe, const SimilarityMatrix& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    json row = json::array();
    for (auto v : s.row(i)) row.push_back(round6(v));
    rows.push_back(std::move(row));
  }
  return {{"classes", universe.classes()}, {"matrix", rows}};
}

json merges_json(const ClassUniverse& universe, const std::vector<MergeRecord>& log) {
  json out = json::array();
  for (const auto& m : log) out.push_back({{"a", names(universe, m.a)}, {"b", names(universe, m.b)}, {"score", round6(m.score)}});
  return out;
}

std::string paths_dump(const std::vector<ReducedPath>& paths) {
  std::string out;
  for (const auto& p : paths) {
    out += format_path_line(p);
    out += '\n';
  }
  return out;
}

Partitioning partitioning_from_json(const json& doc, const ClassUniverse& universe) {
  auto invalid = [](const std::string& why) { return Error(ErrorKind::PartitionFileInvalid, why); };
  if (!doc.is_object() || !doc.contains("partitions") || !doc["partitions"].is_array()) {
    throw invalid("expected an object with a \"partitions\" array");
  }
  Partitioning p;
  std::vector<bool> seen(universe.size(), false);
  for (const auto& entry : doc["partitions"]) {
    const json* members = &entry;
    if (entry.is_object()) {
      if (!entry.contains("classes")) throw invalid("partition object without \"classes\"");
      members = &entry["classes"];
    }
    if (!members->is_array() || members->empty()) throw invalid("each partition must be a non-empty class list");
    std::vector<ClassId> part;
    for (const auto& name : *members) {
      if (!name.is_string()) throw invalid("class names must be strings");
      const auto id = universe.id_of(name.get<std::string>());
      if (!id) throw invalid("class \"" + name.get<std::string>() + "\" was not observed in the traces");
      if (seen[*id]) throw invalid("class \"" + name.get<std::string>() + "\" is assigned more than once");
      seen[*id] = true;
      part.push_back(*id);
    }
    std::sort(part.begin(), part.end());
    p.partitions.push_back(std::move(part));
  }
  for (ClassId c = 0; c < universe.size(); ++c) {
    if (!seen[c]) throw invalid("class \"" + universe.name(c) + "\" is not assigned to any partition");
  }
  p.target_n = doc.contains("n") && doc["n"].is_number_unsigned() ? doc["n"].get<std::size_t>() : p.partitions.size();
  return p;
}

}  // namespace tracepart
