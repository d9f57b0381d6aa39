#include "fracfd/toeplitz.hpp"

#include <cmath>

#include "fft.hpp"
#include "fracfd/errors.hpp"
#include "summation.hpp"

namespace fracfd {

std::size_t circulant_embedding_size(std::size_t n) {
    const std::size_t target = n == 0 ? 1 : 2 * n - 1;
    std::size_t l = 1;
    while (l < target) l <<= 1;
    return l;
}

namespace {

void check_shape(std::span<const double> col, std::span<const double> row, std::size_t xn) {
    if (col.size() != row.size()) throw ConfigError("Toeplitz: column and row lengths differ");
    if (col.empty()) throw ConfigError("Toeplitz: empty matrix");
    if (col[0] != row[0]) throw ConfigError("Toeplitz: column and row disagree at index 0");
    if (xn != col.size()) throw ConfigError("Toeplitz: vector length does not match matrix");
}

}  // namespace

std::vector<double> naive_toeplitz_matvec(std::span<const double> col, std::span<const double> row,
                                          std::span<const double> x) {
    check_shape(col, row, x.size());
    const std::size_t n = col.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        detail::CompensatedSum s;
        for (std::size_t j = 0; j < n; ++j) s.add((i >= j ? col[i - j] : row[j - i]) * x[j]);
        y[i] = s.value();
    }
    return y;
}

namespace detail {

class CirculantEmbedding {
public:
    RealFft fft;
    std::vector<std::complex<double>> spectrum;

    CirculantEmbedding(std::span<const double> col, std::span<const double> row)
        : fft(circulant_embedding_size(col.size())) {
        const std::size_t n = col.size();
        const std::size_t l = fft.size();
        std::vector<double> c(l, 0.0);
        for (std::size_t k = 0; k < n; ++k) c[k] = col[k];
        for (std::size_t k = 1; k < n; ++k) c[l - k] = row[k];
        spectrum = fft.forward(c);
    }

    std::vector<double> apply(std::span<const double> x) const {
        auto xs = fft.forward(x);
        for (std::size_t k = 0; k < xs.size(); ++k) xs[k] *= spectrum[k];
        auto y = fft.inverse(xs);
        y.resize(x.size());
        return y;
    }
};

}  // namespace detail

std::vector<double> toeplitz_matvec(std::span<const double> col, std::span<const double> row,
                                    std::span<const double> x) {
    check_shape(col, row, x.size());
    return detail::CirculantEmbedding(col, row).apply(x);
}

ToeplitzMatrix::ToeplitzMatrix(std::vector<double> first_column, std::vector<double> first_row)
    : column_(std::move(first_column)), row_(std::move(first_row)) {
    check_shape(column_, row_, column_.size());
    embedding_ = std::make_shared<const detail::CirculantEmbedding>(column_, row_);
}

ToeplitzMatrix::~ToeplitzMatrix() = default;
ToeplitzMatrix::ToeplitzMatrix(const ToeplitzMatrix&) = default;
ToeplitzMatrix& ToeplitzMatrix::operator=(const ToeplitzMatrix&) = default;
ToeplitzMatrix::ToeplitzMatrix(ToeplitzMatrix&&) noexcept = default;
ToeplitzMatrix& ToeplitzMatrix::operator=(ToeplitzMatrix&&) noexcept = default;

std::vector<double> ToeplitzMatrix::multiply(std::span<const double> x) const {
    check_shape(column_, row_, x.size());
    return embedding_->apply(x);
}

std::vector<double> ToeplitzMatrix::multiply_naive(std::span<const double> x) const {
    return naive_toeplitz_matvec(column_, row_, x);
}

Eigen::MatrixXd ToeplitzMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            m(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return m;
}

StrangCirculant::StrangCirculant(const ToeplitzMatrix& t)
    : n_(t.size()), fft_(std::make_unique<detail::RealFft>(t.size())) {
    std::vector<double> c(n_);
    const std::size_t half = n_ / 2;
    for (std::size_t k = 0; k < n_; ++k) c[k] = k <= half ? t(k, 0) : t(0, n_ - k);
    eigenvalues_ = fft_->forward(c);
    for (const auto& ev : eigenvalues_) {
        if (!(std::abs(ev) > 0.0) || !std::isfinite(std::abs(ev))) {
            throw SolverError("Strang circulant preconditioner is singular");
        }
    }
}

StrangCirculant::~StrangCirculant() = default;
StrangCirculant::StrangCirculant(StrangCirculant&&) noexcept = default;
StrangCirculant& StrangCirculant::operator=(StrangCirculant&&) noexcept = default;

std::vector<double> StrangCirculant::solve(std::span<const double> r) const {
    if (r.size() != n_) throw ConfigError("StrangCirculant: vector length mismatch");
    auto rs = fft_->forward(r);
    for (std::size_t k = 0; k < rs.size(); ++k) rs[k] /= eigenvalues_[k];
    return fft_->inverse(rs);
}

}  // namespace fracfd
