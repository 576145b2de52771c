#include "tracepart/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "tracepart/error.hpp"
#include "tracepart/hash.hpp"

namespace tracepart {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::ManifestMissing: return "ManifestMissing";
    case ErrorKind::ManifestInvalid: return "ManifestInvalid";
    case ErrorKind::TraceFileMissing: return "TraceFileMissing";
    case ErrorKind::InvalidTarget: return "InvalidTarget";
    case ErrorKind::KnownClassListInvalid: return "KnownClassListInvalid";
    case ErrorKind::PartitionFileInvalid: return "PartitionFileInvalid";
    case ErrorKind::InvalidMove: return "InvalidMove";
    case ErrorKind::StaleRevision: return "StaleRevision";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), is_space);
}

[[noreturn]] void malformed(std::string_view source, std::size_t seq, std::string_view why) {
  std::ostringstream os;
  os << source << ":" << seq << ": " << why;
  throw Error(ErrorKind::MalformedLine, os.str());
}

}  // namespace

std::optional<TraceEvent> parse_trace_line(std::string_view line, std::size_t seq,
                                           std::string_view source) {
  std::string_view rest = trim(line);
  if (rest.empty()) return std::nullopt;

  TraceEvent ev;
  ev.seq = seq;

  const auto comma = rest.find(',');
  if (comma == std::string_view::npos) malformed(source, seq, "missing ',' after timestamp");
  const auto timestamp = rest.substr(0, comma);
  if (timestamp.empty() || has_space(timestamp)) malformed(source, seq, "bad timestamp");
  ev.timestamp = std::string(timestamp);
  rest.remove_prefix(comma + 1);

  if (rest.empty() || rest.front() != '[') malformed(source, seq, "expected '[' before thread id");
  rest.remove_prefix(1);
  const auto close = rest.find(']');
  if (close == std::string_view::npos || close == 0) malformed(source, seq, "bad thread id");
  const auto digits = rest.substr(0, close);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ev.thread_id);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    malformed(source, seq, "thread id is not a non-negative integer");
  }
  rest.remove_prefix(close + 1);
  if (rest.empty() || rest.front() != ',') malformed(source, seq, "expected ',' after thread id");
  rest.remove_prefix(1);

  constexpr std::string_view kEntering = "Entering";
  constexpr std::string_view kExiting = "Exiting";
  if (rest.starts_with(kEntering)) {
    ev.direction = Direction::Entering;
    rest.remove_prefix(kEntering.size());
  } else if (rest.starts_with(kExiting)) {
    ev.direction = Direction::Exiting;
    rest.remove_prefix(kExiting.size());
  } else {
    malformed(source, seq, "expected 'Entering' or 'Exiting'");
  }
  if (rest.empty() || !is_space(rest.front())) malformed(source, seq, "missing qualified method name");

  // Everything up to the last whitespace-delimited token is probe filler.
  rest = trim(rest);
  auto last_ws = std::find_if(rest.rbegin(), rest.rend(), is_space);
  const auto qualified = rest.substr(static_cast<std::size_t>(rest.rend() - last_ws));

  const auto sep = qualified.find("::");
  if (sep == std::string_view::npos) malformed(source, seq, "expected Class::method");
  const auto cls = qualified.substr(0, sep);
  const auto method = qualified.substr(sep + 2);
  if (cls.empty() || method.empty()) malformed(source, seq, "empty class or method name");
  if (method.find("::") != std::string_view::npos) malformed(source, seq, "ambiguous '::' in method name");
  ev.class_name = std::string(cls);
  ev.method_name = std::string(method);
  return ev;
}

std::string format_trace_event(const TraceEvent& event) {
  std::string out;
  out.reserve(event.timestamp.size() + event.class_name.size() + event.method_name.size() + 32);
  out += event.timestamp;
  out += ",[";
  out += std::to_string(event.thread_id);
  out += "],";
  out += event.direction == Direction::Entering ? "Entering" : "Exiting";
  out += " ... ";
  out += event.class_name;
  out += "::";
  out += event.method_name;
  return out;
}

std::vector<TraceEvent> parse_trace_text(std::string_view text, std::string_view source) {
  std::vector<TraceEvent> events;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = text.substr(0, nl);
    ++line_no;
    if (auto ev = parse_trace_line(line, line_no, source)) events.push_back(std::move(*ev));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return events;
}

std::vector<TraceEvent> read_trace_file(const std::filesystem::path& path, std::string_view source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::TraceFileMissing, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_text(buf.str(), source);
}

TraceCorpus::TraceCorpus(std::vector<UseCaseTraces> use_cases) : use_cases_(std::move(use_cases)) {}

std::vector<UseCaseId> TraceCorpus::ids() const {
  std::vector<UseCaseId> out;
  out.reserve(use_cases_.size());
  for (const auto& uc : use_cases_) out.push_back(uc.id);
  return out;
}

std::optional<std::size_t> TraceCorpus::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < use_cases_.size(); ++i) {
    if (use_cases_[i].id.label == label) return i;
  }
  return std::nullopt;
}

std::string TraceCorpus::digest() const {
  Fnv1a64 total;
  for (const auto& uc : use_cases_) {
    total.update(uc.id.label);
    total.update(std::string_view("\0", 1));
    std::vector<std::uint64_t> file_hashes;
    for (const auto& stream : uc.streams) {
      Fnv1a64 h;
      for (const auto& ev : stream.events) {
        h.update(format_trace_event(ev));
        h.update("\n");
      }
      file_hashes.push_back(h.value());
    }
    std::sort(file_hashes.begin(), file_hashes.end());
    for (auto fh : file_hashes) total.update_u64(fh);
  }
  return total.hex();
}

TraceCorpus load_corpus(const std::filesystem::path& manifest_path) {
  using nlohmann::json;
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorKind::ManifestMissing, manifest_path.string());

  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ManifestInvalid, manifest_path.string() + ": " + e.what());
  }

  auto invalid = [&](const std::string& why) {
    return Error(ErrorKind::ManifestInvalid, manifest_path.string() + ": " + why);
  };
  if (!doc.is_object() || !doc.contains("use_cases") || !doc["use_cases"].is_array()) {
    throw invalid("expected an object with a \"use_cases\" array");
  }
  const auto& entries = doc["use_cases"];
  if (entries.empty()) throw invalid("no use cases");

  struct Pending {
    std::string label;
    std::vector<std::string> files;
  };
  std::vector<Pending> pending;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const std::string where = "use_cases[" + std::to_string(i) + "]";
    if (!e.is_object()) throw invalid(where + " is not an object");
    if (!e.contains("label") || !e["label"].is_string() || e["label"].get<std::string>().empty()) {
      throw invalid(where + ".label must be a non-empty string");
    }
    if (!e.contains("trace_files") || !e["trace_files"].is_array() || e["trace_files"].empty()) {
      throw invalid(where + ".trace_files must be a non-empty array");
    }
    Pending p{e["label"].get<std::string>(), {}};
    for (const auto& f : e["trace_files"]) {
      if (!f.is_string() || f.get<std::string>().empty()) {
        throw invalid(where + ".trace_files entries must be non-empty strings");
      }
      p.files.push_back(f.get<std::string>());
    }
    for (const auto& q : pending) {
      if (q.label == p.label) throw invalid("duplicate use case label \"" + p.label + "\"");
    }
    pending.push_back(std::move(p));
  }

  const auto base = manifest_path.parent_path();
  for (const auto& p : pending) {
    for (const auto& f : p.files) {
      if (!std::filesystem::is_regular_file(base / f)) {
        throw Error(ErrorKind::TraceFileMissing, (base / f).string());
      }
    }
  }

  // One parse task per referenced file.
  std::vector<std::vector<std::future<std::vector<TraceEvent>>>> jobs(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    for (const auto& f : pending[i].files) {
      jobs[i].push_back(std::async(std::launch::async, [path = base / f, f] {
        return read_trace_file(path, f);
      }));
    }
  }

  std::vector<UseCaseTraces> use_cases;
  use_cases.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    UseCaseTraces uc{UseCaseId{pending[i].label}, {}};
    for (std::size_t k = 0; k < pending[i].files.size(); ++k) {
      uc.streams.push_back(TraceStream{pending[i].files[k], jobs[i][k].get()});
    }
    use_cases.push_back(std::move(uc));
  }
  return TraceCorpus(std::move(use_cases));
}

}  // namespace tracepart
