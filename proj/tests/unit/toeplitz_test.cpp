#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fracfd/errors.hpp"
#include "fracfd/toeplitz.hpp"

using namespace fracfd;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

// Plain triple loop, independent of the library's naive path.
std::vector<double> triple_loop(const std::vector<double>& col, const std::vector<double>& row,
                                const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) y[i] += (i >= j ? col[i - j] : row[j - i]) * x[j];
    }
    return y;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (const double v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST(CirculantEmbedding, NextPowerOfTwo) {
    EXPECT_EQ(circulant_embedding_size(1), 1u);
    EXPECT_EQ(circulant_embedding_size(2), 4u);
    EXPECT_EQ(circulant_embedding_size(3), 8u);
    EXPECT_EQ(circulant_embedding_size(64), 128u);
    EXPECT_EQ(circulant_embedding_size(65), 256u);
}

TEST(ToeplitzMatvec, IdentityLeavesVectorUnchanged) {
    std::mt19937_64 rng(1);
    const std::size_t n = 37;
    std::vector<double> e(n, 0.0);
    e[0] = 1.0;
    const auto x = random_vector(n, rng);
    const auto y = toeplitz_matvec(e, e, x);
    EXPECT_LT(max_diff(x, y), 1e-15);
}

TEST(ToeplitzMatvec, AllOnesTimesFirstUnitVector) {
    const std::size_t n = 16;
    std::vector<double> ones(n, 1.0);
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    const auto y = toeplitz_matvec(ones, ones, e1);
    for (const double v : y) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(ToeplitzMatvec, RandomAgainstTripleLoop) {
    std::mt19937_64 rng(2);
    auto col = random_vector(64, rng);
    auto row = random_vector(64, rng);
    row[0] = col[0];
    const auto x = random_vector(64, rng);
    const auto ref = triple_loop(col, row, x);
    EXPECT_LT(max_diff(toeplitz_matvec(col, row, x), ref), 1e-12);
    EXPECT_LT(max_diff(naive_toeplitz_matvec(col, row, x), ref), 1e-13);
}

TEST(ToeplitzMatvec, FastMatchesNaiveUpToOneThousand) {
    std::mt19937_64 rng(3);
    for (const std::size_t n : {1u, 2u, 3u, 100u, 511u, 1024u}) {
        auto col = random_vector(n, rng);
        auto row = random_vector(n, rng);
        row[0] = col[0];
        const auto x = random_vector(n, rng);
        const auto ref = naive_toeplitz_matvec(col, row, x);
        const double scale = std::max(1.0, max_abs(ref));
        EXPECT_LT(max_diff(toeplitz_matvec(col, row, x), ref) / scale, 1e-12) << n;
    }
}

TEST(ToeplitzMatvec, RejectsMismatchedInput) {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 2, 3};
    const std::vector<double> c{1, 2};
    EXPECT_THROW((void)toeplitz_matvec(a, b, a), ConfigError);
    EXPECT_THROW((void)toeplitz_matvec(a, a, c), ConfigError);
    EXPECT_THROW((void)toeplitz_matvec(a, c, a), ConfigError);
}

TEST(ToeplitzMatrix, DenseTransposeAndMultiply) {
    std::mt19937_64 rng(4);
    auto col = random_vector(20, rng);
    auto row = random_vector(20, rng);
    row[0] = col[0];
    const ToeplitzMatrix t(col, row);
    const auto d = t.dense();
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j < 20; ++j) EXPECT_EQ(d(i, j), t(i, j));
    }
    const auto tt = t.transposed();
    EXPECT_EQ((tt.dense() - d.transpose()).norm(), 0.0);
    const auto x = random_vector(20, rng);
    EXPECT_LT(max_diff(t.multiply(x), t.multiply_naive(x)), 1e-13);

    // copies share the cached transform and stay usable
    const ToeplitzMatrix copy = t;
    EXPECT_EQ(copy.multiply(x), t.multiply(x));
}

TEST(StrangCirculant, InvertsCirculantExactly) {
    // A symmetric circulant is its own Strang approximation.
    const std::size_t n = 16;
    std::vector<double> c(n, 0.0);
    c[0] = 4.0;
    c[1] = c[n - 1] = -1.0;
    c[2] = c[n - 2] = 0.5;
    std::vector<double> col(n), row(n);
    for (std::size_t k = 0; k < n; ++k) {
        col[k] = c[k];
        row[k] = c[(n - k) % n];
    }
    const ToeplitzMatrix t(col, row);
    // embed the wrap-around entries explicitly
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = c[(i + n - j) % n];
    }
    const StrangCirculant p(t);
    std::mt19937_64 rng(5);
    const auto r = random_vector(n, rng);
    const auto z = p.solve(r);
    Eigen::VectorXd zv = Eigen::Map<const Eigen::VectorXd>(z.data(), n);
    Eigen::VectorXd rv = Eigen::Map<const Eigen::VectorXd>(r.data(), n);
    EXPECT_LT((a * zv - rv).cwiseAbs().maxCoeff(), 1e-13);
}
