#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>
#include <new>

#include "fracfd/errors.hpp"

namespace fracfd::detail {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

template <class T>
struct FftwDeleter {
    void operator()(T* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T, FftwDeleter<T>>;

template <class T>
FftwBuffer<T> allocate(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) throw std::bad_alloc();
    return FftwBuffer<T>(p);
}

}  // namespace

struct RealFft::Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
    if (n == 0) throw ConfigError("RealFft: zero length");
    auto real = allocate<double>(n);
    auto spec = allocate<fftw_complex>(n / 2 + 1);
    const int len = static_cast<int>(n);
    std::lock_guard lock(planner_mutex());
    plans_->r2c = fftw_plan_dft_r2c_1d(len, real.get(), spec.get(), FFTW_ESTIMATE);
    plans_->c2r = fftw_plan_dft_c2r_1d(len, spec.get(), real.get(), FFTW_ESTIMATE);
    if (plans_->r2c == nullptr || plans_->c2r == nullptr) throw SolverError("FFTW planning failed");
}

RealFft::~RealFft() {
    if (!plans_) return;
    std::lock_guard lock(planner_mutex());
    if (plans_->r2c != nullptr) fftw_destroy_plan(plans_->r2c);
    if (plans_->c2r != nullptr) fftw_destroy_plan(plans_->c2r);
}

RealFft::RealFft(RealFft&&) noexcept = default;
RealFft& RealFft::operator=(RealFft&&) noexcept = default;

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) const {
    if (in.size() > n_) throw ConfigError("RealFft::forward: input longer than transform");
    auto real = allocate<double>(n_);
    auto spec = allocate<fftw_complex>(spectrum_size());
    std::fill(real.get(), real.get() + n_, 0.0);
    std::copy(in.begin(), in.end(), real.get());
    fftw_execute_dft_r2c(plans_->r2c, real.get(), spec.get());
    std::vector<std::complex<double>> out(spectrum_size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = {spec.get()[k][0], spec.get()[k][1]};
    return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> in) const {
    if (in.size() != spectrum_size()) throw ConfigError("RealFft::inverse: wrong spectrum size");
    auto real = allocate<double>(n_);
    auto spec = allocate<fftw_complex>(spectrum_size());
    for (std::size_t k = 0; k < in.size(); ++k) {
        spec.get()[k][0] = in[k].real();
        spec.get()[k][1] = in[k].imag();
    }
    // c2r destroys its input; the buffer is ours.
    fftw_execute_dft_c2r(plans_->c2r, spec.get(), real.get());
    const double scale = 1.0 / static_cast<double>(n_);
    std::vector<double> out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = real.get()[j] * scale;
    return out;
}

}  // namespace fracfd::detail
