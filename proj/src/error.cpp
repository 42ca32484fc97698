#include <complen/error.hpp>

namespace complen {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::unsupported_degree: return "UnsupportedDegree";
    case Errc::degenerate_leading_coefficient: return "DegenerateLeadingCoefficient";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::missing_quadratic_form: return "MissingQuadraticForm";
    case Errc::missing_unit: return "MissingUnit";
    case Errc::degenerate_parameter: return "DegenerateParameter";
    case Errc::zero_parameter: return "ZeroParameter";
    case Errc::characteristic_forbidden: return "CharacteristicForbidden";
    case Errc::mu_not_a_solution: return "MuNotASolution";
    case Errc::reducible_cubic: return "ReducibleCubic";
    case Errc::self_check_failed: return "SelfCheckFailed";
    case Errc::not_scalar_operator: return "NotScalarOperator";
    case Errc::mirror_law_failed: return "MirrorLawFailed";
    case Errc::degenerate_form: return "DegenerateForm";
    case Errc::mode_unjustified: return "ModeUnjustified";
    case Errc::cost_cap_exceeded: return "CostCapExceeded";
    case Errc::infinite_field: return "InfiniteField";
    case Errc::unknown_identity: return "UnknownIdentity";
    case Errc::certificate_missing: return "CertificateMissing";
    case Errc::parse_error: return "ParseError";
    case Errc::invariant_violation: return "InvariantViolation";
    case Errc::division_by_zero: return "DivisionByZero";
  }
  return "Error";
}

}  // namespace complen
