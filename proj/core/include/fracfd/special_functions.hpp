#pragma once

namespace fracfd::special {

/// ln|Gamma(z)| together with the sign of Gamma(z).  Undefined at poles.
struct SignedLogGamma {
    double log_abs;
    int sign;
};

[[nodiscard]] SignedLogGamma signed_lgamma(double z);

/// True when z lies within `tol` of 0, -1, -2, ...
[[nodiscard]] bool is_nonpositive_integer(double z, double tol = 1e-9);

/// 1/Gamma(z), exactly zero at the poles of Gamma.
[[nodiscard]] double reciprocal_gamma(double z, double pole_tol = 1e-9);

/// Gamma(num)/Gamma(den) evaluated through log-gamma.  Returns 0 when `den`
/// is a pole; `num` must not be a pole.
[[nodiscard]] double gamma_ratio(double num, double den, double pole_tol = 1e-9);

}  // namespace fracfd::special
