#pragma once

#include <stdexcept>
#include <string>

namespace dca {

enum class ErrorCode {
  invalid_argument,
  empty_input,
  non_manifold,
  not_colorable,
  not_closed,
  not_flat,
  degenerate_path,
  boundary_vertex,
  zero_gauge_value,
  missing_coloring,
  domain_mismatch,
  inconsistent,
  window_too_small,
  not_converged,
  too_large,
  too_short,
  not_a_path,
  infeasible_anchor,
  dependent_data,
  disconnected_seed,
  parse,
  io,
  internal,
};

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::non_manifold: return "NonManifold";
    case ErrorCode::not_colorable: return "NotColorable";
    case ErrorCode::not_closed: return "NotClosed";
    case ErrorCode::not_flat: return "NotFlat";
    case ErrorCode::degenerate_path: return "DegeneratePath";
    case ErrorCode::boundary_vertex: return "BoundaryVertex";
    case ErrorCode::zero_gauge_value: return "ZeroGaugeValue";
    case ErrorCode::missing_coloring: return "MissingColoring";
    case ErrorCode::domain_mismatch: return "DomainMismatch";
    case ErrorCode::inconsistent: return "Inconsistent";
    case ErrorCode::window_too_small: return "WindowTooSmall";
    case ErrorCode::not_converged: return "QuadratureNotConverged";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::too_short: return "TooShort";
    case ErrorCode::not_a_path: return "NotAPath";
    case ErrorCode::infeasible_anchor: return "InfeasibleAnchor";
    case ErrorCode::dependent_data: return "DependentDataSet";
    case ErrorCode::disconnected_seed: return "DisconnectedSeed";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::io: return "IoError";
    case ErrorCode::internal: return "InternalError";
  }
  return "Unknown";
}

}  // namespace dca
