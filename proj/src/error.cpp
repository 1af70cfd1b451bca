#include "rbcs/error.hpp"

namespace rbcs {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::out_of_range: return "out-of-range";
    case Errc::not_invertible: return "not-invertible";
    case Errc::ill_conditioned: return "ill-conditioned";
    case Errc::degenerate_vacuum: return "degenerate-vacuum";
    case Errc::orthogonal_vacua: return "orthogonal-vacua";
    case Errc::provenance_mismatch: return "provenance-mismatch";
    case Errc::under_resolved: return "under-resolved";
    case Errc::non_unit_vector: return "non-unit-vector";
    case Errc::config: return "config";
    case Errc::io: return "io";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace rbcs
