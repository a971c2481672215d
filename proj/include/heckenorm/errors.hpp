#pragma once

#include <stdexcept>
#include <string>

namespace heckenorm {

// Failure codes surfaced by the library.  Every throw site picks the most
// specific code; the CLI maps any Error to exit status 1 and a failed
// verification verdict to exit status 2.
enum class errc {
    not_fundamental,       // D is not a fundamental discriminant > 1
    rank_deficient,        // generators span less than a rank-2 lattice
    zero_scalar,           // scaling a lattice by 0
    search_cap,            // unit power scan exhausted its cap
    not_integral_ideal,    // lattice is not an integral O_F-ideal
    not_unimodular,        // matrix determinant != 1
    not_integral_matrix,   // rational matrix has a non-integer entry
    not_hyperbolic,        // |trace| <= 2
    parabolic_axis,        // c = 0: fixed-point axis is a vertical line
    not_upper_half_plane,  // Im z <= 0
    precision_too_low,     // series tail exceeds the requested tolerance
    integrality_violation, // conjugated matrix left SL2(Z)
    singular,              // matrix inverse of determinant 0
    parse_error,           // malformed input text
    not_a_lattice,         // triple fails a > 0, d > 0
    internal,              // invariant broken inside the library
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_fundamental:       return "NOT_FUNDAMENTAL";
    case errc::rank_deficient:        return "RANK_DEFICIENT";
    case errc::zero_scalar:           return "ZERO_SCALAR";
    case errc::search_cap:            return "SEARCH_CAP";
    case errc::not_integral_ideal:    return "NOT_INTEGRAL_IDEAL";
    case errc::not_unimodular:        return "NOT_UNIMODULAR";
    case errc::not_integral_matrix:   return "NOT_INTEGRAL_MATRIX";
    case errc::not_hyperbolic:        return "NOT_HYPERBOLIC";
    case errc::parabolic_axis:        return "PARABOLIC_AXIS";
    case errc::not_upper_half_plane:  return "NOT_UPPER_HALF_PLANE";
    case errc::precision_too_low:     return "PRECISION_TOO_LOW";
    case errc::integrality_violation: return "INTEGRALITY_VIOLATION";
    case errc::singular:              return "SINGULAR";
    case errc::parse_error:           return "PARSE_ERROR";
    case errc::not_a_lattice:         return "NOT_A_LATTICE";
    case errc::internal:              return "INTERNAL";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace heckenorm
