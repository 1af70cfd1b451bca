#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rbcs {

enum class Errc {
  invalid_dimension,
  dimension_mismatch,
  out_of_range,
  not_invertible,
  ill_conditioned,
  degenerate_vacuum,
  orthogonal_vacua,
  provenance_mismatch,
  under_resolved,
  non_unit_vector,
  config,
  io,
};

std::string_view to_string(Errc code);

/// Every failure raised by the toolkit. The code lets callers (the verify
/// runner in particular) turn construction errors into failed reports.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rbcs
