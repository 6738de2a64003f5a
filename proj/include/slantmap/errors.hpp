#pragma once

#include <stdexcept>
#include <string>

namespace slantmap {

enum class ErrorKind {
  RankDeficient,
  SingularMetric,
  DimensionMismatch,
  RankOutOfRange,
  IsometryViolation,
  DualityViolation,
  ClusterAmbiguity,
  SpectrumOutOfRange,
  Unclassifiable,
  PreconditionUnverified,
  InternalInconsistency,
  IncompatibleParameters,
  FixtureMissing,
  InvalidInput,
  IoFailure,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slantmap
