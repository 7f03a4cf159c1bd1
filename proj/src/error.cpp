#include "unitri/error.hpp"

namespace unitri {

std::string_view to_string(errc code) noexcept {
  switch (code) {
  case errc::descriptor_mismatch: return "DescriptorMismatch";
  case errc::dimension_mismatch: return "DimensionMismatch";
  case errc::not_a_unit: return "NotAUnit";
  case errc::not_unimodular: return "NotUnimodular";
  case errc::capability_missing: return "CapabilityMissing";
  case errc::not_sl: return "NotSL";
  case errc::support_violation: return "SupportViolation";
  case errc::corner_transvection: return "CornerTransvection";
  case errc::dimension_too_small: return "DimensionTooSmall";
  case errc::not_monomial: return "NotMonomial";
  case errc::det_not_one: return "DetNotOne";
  case errc::out_of_range: return "OutOfRange";
  case errc::no_solution: return "NoSolution";
  case errc::search_exhausted: return "SearchExhausted";
  case errc::near_singular: return "NearSingular";
  case errc::bad_pattern: return "BadPattern";
  case errc::too_large: return "TooLarge";
  case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

} // namespace unitri
