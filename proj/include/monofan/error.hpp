#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace monofan {

enum class ErrorKind {
  AmbientMismatch,
  NotInSupport,
  SupportMismatch,
  NotFaceClosed,
  InteriorOverlap,
  UnionFaceViolation,
  InvalidSemiComplex,
  NotPointed,
  UnknownStratum,
  NotSubstratum,
  ChainMismatch,
  InvalidPath,
  NotConvex,
  NotSimplicial,
  MissingTau,
  ResourceCap,
  CheckFailed,
  OverlapInconsistency,
  NotOverStratum,
  NotNilpotent,
  NonCommuting,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library carries a kind and a JSON witness so callers
/// (and the CLI) can report exactly what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, nlohmann::json witness = nullptr)
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  nlohmann::json witness_;
};

}  // namespace monofan
