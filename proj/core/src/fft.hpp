#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracfd::detail {

/// Real-to-complex transform pair of fixed length backed by FFTW.  Plans are
/// created with FFTW_ESTIMATE so results are deterministic; execution uses
/// per-call buffers, so concurrent calls on one object are safe.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    RealFft(RealFft&&) noexcept;
    RealFft& operator=(RealFft&&) noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t spectrum_size() const noexcept { return n_ / 2 + 1; }

    /// Zero-pads `in` to length n and returns the n/2+1 non-redundant coefficients.
    [[nodiscard]] std::vector<std::complex<double>> forward(std::span<const double> in) const;
    /// Inverse transform scaled by 1/n.
    [[nodiscard]] std::vector<double> inverse(std::span<const std::complex<double>> in) const;

private:
    struct Plans;
    std::size_t n_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace fracfd::detail
