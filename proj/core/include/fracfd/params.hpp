#pragma once

#include <string>
#include <string_view>

namespace fracfd {

enum class Scheme { wsgd, fcd };

[[nodiscard]] std::string_view to_string(Scheme s) noexcept;
[[nodiscard]] Scheme parse_scheme(std::string_view s);

/// Coefficients of  alpha u - theta aD^beta u - (1-theta) xD^beta u = f.
struct FracParams {
    double alpha = 1.0;
    double beta = 1.5;
    double theta = 1.0;

    /// Throws ConfigError unless alpha >= 0, beta in (1,2], theta in [0,1].
    void validate() const;
    /// As validate(), plus theta == 1/2 for the centered scheme.
    void validate(Scheme scheme) const;
};

}  // namespace fracfd
