#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unitri {

enum class errc {
  descriptor_mismatch,
  dimension_mismatch,
  not_a_unit,
  not_unimodular,
  capability_missing,
  not_sl,
  support_violation,
  corner_transvection,
  dimension_too_small,
  not_monomial,
  det_not_one,
  out_of_range,
  no_solution,
  search_exhausted,
  near_singular,
  bad_pattern,
  too_large,
  parse_error,
};

std::string_view to_string(errc code) noexcept;

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
public:
  Error(errc code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

} // namespace unitri
