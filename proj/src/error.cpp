#include "randrk/error.hpp"

#include <sstream>

namespace randrk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ContractionViolated: return "ContractionViolated";
    case ErrorKind::SingularStage: return "SingularStage";
    case ErrorKind::PoleAtStage: return "PoleAtStage";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EmptyContour: return "EmptyContour";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::NotOnReferenceGrid: return "NotOnReferenceGrid";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : Error(kind, message, std::nullopt, std::nullopt) {}

Error::Error(ErrorKind kind, std::string base, std::optional<std::size_t> step,
             std::optional<std::uint64_t> path)
    : std::runtime_error(compose(kind, base, step, path)),
      kind_(kind),
      base_(std::move(base)),
      step_(step),
      path_(path) {}

std::string Error::compose(ErrorKind kind, const std::string& base,
                           std::optional<std::size_t> step, std::optional<std::uint64_t> path) {
  std::ostringstream os;
  os << to_string(kind);
  if (path) os << " [path " << *path << "]";
  if (step) os << " [step " << *step << "]";
  os << ": " << base;
  return os.str();
}

Error Error::with_step(std::size_t j) const { return Error(kind_, base_, j, path_); }

Error Error::with_path(std::uint64_t i) const { return Error(kind_, base_, step_, i); }

}  // namespace randrk
