#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tracepart/clustering.hpp"
#include "tracepart/explain.hpp"
#include "tracepart/metrics.hpp"

namespace tracepart {

struct Analysis;

/// `%.6f` with round-half-even on exact ties; negative zero prints as 0.
std::string format_fixed6(double value);
/// The value `format_fixed6` prints, as a double.
double round6(double value);

nlohmann::json metrics_json(const MetricsReport& m, const Partitioning& p, const ClassUniverse& universe);

nlohmann::json report_json(const Analysis& a, const Partitioning& p, const MetricsReport& m,
                           const Explanation& e, const CoverageReport& coverage);

std::string render_text(const Analysis& a, const Partitioning& p, const MetricsReport& m,
                        const Explanation& e, const CoverageReport& coverage);

nlohmann::json matrix_json(const ClassUniverse& universe, const SimilarityMatrix& s);
nlohmann::json merges_json(const ClassUniverse& universe, const std::vector<MergeRecord>& log);
std::string paths_dump(const std::vector<ReducedPath>& paths);

/// Reads partitions from a report, a state document, a metrics report or a
/// bare `{"partitions": [[...], ...]}` file. Every observed class must appear
/// exactly once. Throws Error(PartitionFileInvalid).
Partitioning partitioning_from_json(const nlohmann::json& doc, const ClassUniverse& universe);

}  // namespace tracepart
