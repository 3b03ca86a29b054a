#pragma once

#include <stdexcept>
#include <string>

namespace conekit {

enum class Errc {
  invalid_argument,
  dimension_mismatch,
  unsupported_dimension,
  vertex_coincidence,
  time_component_vanishes,
  not_coherent,
  not_null,
  collinear_inputs,
  singular_matrix,
  not_projection,
  degenerate_samples,
  epsilon_too_large,
  invalid_spec,
  line_collapse,
  no_convergence,
  parse_error,
  domain_error,
};

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace conekit
