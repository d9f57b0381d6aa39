#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fracfd {

namespace detail {
class RealFft;
class CirculantEmbedding;
}

/// Smallest power of two >= 2n - 1.
[[nodiscard]] std::size_t circulant_embedding_size(std::size_t n);

/// Reference O(n^2) product with compensated accumulation.
[[nodiscard]] std::vector<double> naive_toeplitz_matvec(std::span<const double> first_column,
                                                        std::span<const double> first_row,
                                                        std::span<const double> x);

/// O(n log n) product through circulant embedding.
[[nodiscard]] std::vector<double> toeplitz_matvec(std::span<const double> first_column,
                                                  std::span<const double> first_row,
                                                  std::span<const double> x);

/// n x n Toeplitz matrix T_{ij} = t_{i-j}, stored by its first column and row.
/// The transform of the circulant embedding is computed once; multiply() is
/// const and safe to call concurrently.
class ToeplitzMatrix {
public:
    ToeplitzMatrix(std::vector<double> first_column, std::vector<double> first_row);
    ~ToeplitzMatrix();
    ToeplitzMatrix(const ToeplitzMatrix&);
    ToeplitzMatrix& operator=(const ToeplitzMatrix&);
    ToeplitzMatrix(ToeplitzMatrix&&) noexcept;
    ToeplitzMatrix& operator=(ToeplitzMatrix&&) noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return column_.size(); }
    [[nodiscard]] std::span<const double> first_column() const noexcept { return column_; }
    [[nodiscard]] std::span<const double> first_row() const noexcept { return row_; }
    /// t_{i-j}
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return i >= j ? column_[i - j] : row_[j - i];
    }

    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;
    [[nodiscard]] std::vector<double> multiply_naive(std::span<const double> x) const;
    [[nodiscard]] ToeplitzMatrix transposed() const { return {row_, column_}; }
    [[nodiscard]] Eigen::MatrixXd dense() const;

private:
    std::vector<double> column_;
    std::vector<double> row_;
    std::shared_ptr<const detail::CirculantEmbedding> embedding_;
};

/// Strang circulant approximation of a Toeplitz matrix: the central diagonals
/// are copied and wrapped around.  Its inverse is applied with two FFTs.
class StrangCirculant {
public:
    explicit StrangCirculant(const ToeplitzMatrix& t);
    ~StrangCirculant();
    StrangCirculant(StrangCirculant&&) noexcept;
    StrangCirculant& operator=(StrangCirculant&&) noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::span<const std::complex<double>> eigenvalues() const noexcept {
        return eigenvalues_;
    }
    [[nodiscard]] std::vector<double> solve(std::span<const double> r) const;

private:
    std::size_t n_;
    std::unique_ptr<detail::RealFft> fft_;
    std::vector<std::complex<double>> eigenvalues_;
};

}  // namespace fracfd
