#pragma once

#include <stdexcept>
#include <string>

namespace besilab {

enum class ErrorKind {
  invalid_argument,
  tolerance_unachievable,
  construction_failure,
  direction_mismatch,
  degenerate_gradient,
  non_curve,
  zero_curvature,
  zero_vector,
  unbounded_value,
  truncation,
  covering_failure,
  disjointness_failure,
  strip_intersection_empty,
  homogeneity_violated,
  unsupported_kind,
  config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace besilab
