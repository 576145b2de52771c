#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tracepart {

enum class ErrorKind {
  MalformedLine,
  ManifestMissing,
  ManifestInvalid,
  TraceFileMissing,
  InvalidTarget,
  KnownClassListInvalid,
  PartitionFileInvalid,
  InvalidMove,
  StaleRevision,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the toolkit is reported through this type.
/// The CLI maps it to exit code 1 and the service to an HTTP status.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace tracepart
