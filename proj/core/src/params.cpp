#include "fracfd/params.hpp"

#include <cmath>
#include <sstream>

#include "fracfd/errors.hpp"

namespace fracfd {

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::wsgd ? "wsgd" : "fcd";
}

Scheme parse_scheme(std::string_view s) {
    if (s == "wsgd" || s == "WSGD") return Scheme::wsgd;
    if (s == "fcd" || s == "FCD") return Scheme::fcd;
    throw ConfigError("unknown scheme '" + std::string(s) + "' (expected wsgd or fcd)");
}

void FracParams::validate() const {
    std::ostringstream os;
    if (!std::isfinite(alpha) || alpha < 0.0) {
        os << "alpha must be finite and >= 0, got " << alpha;
    } else if (!std::isfinite(beta) || beta <= 1.0 || beta > 2.0) {
        os << "beta must lie in (1, 2], got " << beta;
    } else if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0) {
        os << "theta must lie in [0, 1], got " << theta;
    } else {
        return;
    }
    throw ConfigError(os.str());
}

void FracParams::validate(Scheme scheme) const {
    validate();
    if (scheme == Scheme::fcd && theta != 0.5) {
        throw ConfigError("the centered (fcd) scheme requires theta = 1/2");
    }
}

}  // namespace fracfd
