#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace randrk {

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  ContractionViolated,
  SingularStage,
  PoleAtStage,
  NonIntegrable,
  DomainError,
  EmptyContour,
  DegenerateFit,
  NotOnReferenceGrid,
  Io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library. Integration and Monte Carlo drivers
// attach the step index / path index on the way out.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> step() const noexcept { return step_; }
  std::optional<std::uint64_t> path() const noexcept { return path_; }

  Error with_step(std::size_t j) const;
  Error with_path(std::uint64_t i) const;

 private:
  Error(ErrorKind kind, std::string base, std::optional<std::size_t> step,
        std::optional<std::uint64_t> path);
  static std::string compose(ErrorKind kind, const std::string& base,
                             std::optional<std::size_t> step,
                             std::optional<std::uint64_t> path);

  ErrorKind kind_;
  std::string base_;
  std::optional<std::size_t> step_;
  std::optional<std::uint64_t> path_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidArgument, message);
}

}  // namespace randrk
