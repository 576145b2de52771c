#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracepart {

enum class Direction : std::uint8_t { Entering, Exiting };

/// One enter/exit record of a raw trace file.
struct TraceEvent {
  std::size_t seq = 0;
  std::string timestamp;
  std::uint64_t thread_id = 0;
  Direction direction = Direction::Entering;
  std::string class_name;
  std::string method_name;

  bool operator==(const TraceEvent&) const = default;
};

/// Business use-case label. Comparison is exact and case-sensitive.
struct UseCaseId {
  std::string label;

  auto operator<=>(const UseCaseId&) const = default;
};

/// Events of one raw trace file, in file order.
struct TraceStream {
  std::string source;  // file name as written in the manifest, used in diagnostics
  std::vector<TraceEvent> events;
};

struct UseCaseTraces {
  UseCaseId id;
  std::vector<TraceStream> streams;
};

/// Parsed corpus. Use cases keep manifest order; each file is one trace.
class TraceCorpus {
public:
  TraceCorpus() = default;
  explicit TraceCorpus(std::vector<UseCaseTraces> use_cases);

  const std::vector<UseCaseTraces>& use_cases() const noexcept { return use_cases_; }
  std::size_t size() const noexcept { return use_cases_.size(); }
  std::vector<UseCaseId> ids() const;
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Content hash that does not depend on the order of files within a use case.
  std::string digest() const;

private:
  std::vector<UseCaseTraces> use_cases_;
};

/// Parses one trace line. Returns std::nullopt for blank lines and throws
/// Error(MalformedLine) otherwise. `source` is only used in the error text.
std::optional<TraceEvent> parse_trace_line(std::string_view line, std::size_t seq,
                                           std::string_view source = "<input>");

/// Inverse of parse_trace_line with the filler normalized to "...".
std::string format_trace_event(const TraceEvent& event);

std::vector<TraceEvent> parse_trace_text(std::string_view text, std::string_view source);
std::vector<TraceEvent> read_trace_file(const std::filesystem::path& path, std::string_view source);

/// Loads `{"use_cases": [{"label": ..., "trace_files": [...]}, ...]}`.
/// Trace paths are relative to the manifest's directory.
TraceCorpus load_corpus(const std::filesystem::path& manifest_path);

}  // namespace tracepart
