#include "bsrd/format.hpp"

#include <charconv>
#include <cmath>

#include "bsrd/error.hpp"

namespace bsrd {

std::string shortest(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string shortest(std::int64_t value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string shortest(std::uint64_t value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterViolation: return "parameter-violation";
    case ErrorKind::MissingParameter: return "missing-parameter";
    case ErrorKind::NumericIntegrity: return "numeric-integrity";
    case ErrorKind::UnsupportedFamily: return "unsupported-family";
    case ErrorKind::DegenerateVariance: return "degenerate-variance";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::EvaluationSingularity: return "evaluation-singularity";
    case ErrorKind::InversionIntegrity: return "inversion-integrity";
    case ErrorKind::Refused: return "refused";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace bsrd
