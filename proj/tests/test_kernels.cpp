#include <doctest.h>

#include <cstring>
#include <vector>

#include "cswm/kernels.hpp"
#include "oracles.hpp"

using namespace cswm;

namespace {

std::vector<double> random_vec(std::uint64_t seed, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    std::mt19937_64 gen(seed);
    for (double& x : v) x = scale * (2.0 * prng::uniform_unit(gen) - 1.0);
    return v;
}

}  // namespace

TEST_CASE("matmul matches a naive triple loop") {
    // Sizes straddle the vector width and include ragged tails.
    const std::size_t shapes[][3] = {{1, 1, 1}, {3, 5, 7},  {8, 8, 8},
                                     {16, 4, 9}, {5, 17, 12}, {13, 13, 13}};
    for (const auto& s : shapes) {
        const auto a = random_vec(s[0] * 100 + s[1], s[0] * s[1], 3.0);
        const auto b = random_vec(s[1] * 100 + s[2], s[1] * s[2], 3.0);
        std::vector<double> got(s[0] * s[2]), want(s[0] * s[2]);
        kernels::matmul(a.data(), b.data(), got.data(), s[0], s[1], s[2]);
        oracles::naive_matmul(a.data(), b.data(), want.data(), s[0], s[1], s[2]);
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("dot and sum_sq_diff match naive accumulation") {
    for (const std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{7},
                                std::size_t{64}, std::size_t{1001}}) {
        const auto x = random_vec(n, n, 2.0);
        const auto y = random_vec(n + 1, n, 2.0);
        CHECK(kernels::dot(x.data(), y.data(), n) ==
              doctest::Approx(oracles::naive_dot(x.data(), y.data(), n)).epsilon(1e-12));
        CHECK(kernels::sum_sq_diff(x.data(), y.data(), n) ==
              doctest::Approx(oracles::naive_sum_sq_diff(x.data(), y.data(), n)).epsilon(1e-12));
    }
}

TEST_CASE("axpy applies y += alpha*x") {
    const std::size_t n = 37;
    const auto x = random_vec(10, n);
    auto y = random_vec(11, n);
    const auto y0 = y;
    kernels::axpy(y.data(), 2.5, x.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(y[i] == doctest::Approx(y0[i] + 2.5 * x[i]).epsilon(1e-12));
    }
}

TEST_CASE("dispatched kernels agree bitwise with the scalar reference") {
    // The SIMD variants are written to follow the exact scalar fma/reduction
    // pattern, so equality here is exact, not approximate.
    for (const std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{16},
                                std::size_t{255}, std::size_t{4096}}) {
        const auto x = random_vec(n * 3 + 1, n, 5.0);
        const auto y = random_vec(n * 3 + 2, n, 5.0);
        CHECK(kernels::dot(x.data(), y.data(), n) ==
              kernels::scalar::dot(x.data(), y.data(), n));
        CHECK(kernels::sum_sq_diff(x.data(), y.data(), n) ==
              kernels::scalar::sum_sq_diff(x.data(), y.data(), n));

        auto y1 = y, y2 = y;
        kernels::axpy(y1.data(), -1.75, x.data(), n);
        kernels::scalar::axpy(y2.data(), -1.75, x.data(), n);
        CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(double)) == 0);
    }

    const std::size_t shapes[][3] = {{4, 4, 4}, {9, 7, 13}, {32, 32, 32}, {3, 64, 10}};
    for (const auto& s : shapes) {
        const auto a = random_vec(s[0] + 41, s[0] * s[1], 2.0);
        const auto b = random_vec(s[2] + 43, s[1] * s[2], 2.0);
        std::vector<double> c1(s[0] * s[2]), c2(s[0] * s[2]);
        kernels::matmul(a.data(), b.data(), c1.data(), s[0], s[1], s[2]);
        kernels::scalar::matmul(a.data(), b.data(), c2.data(), s[0], s[1], s[2]);
        CHECK(std::memcmp(c1.data(), c2.data(), c1.size() * sizeof(double)) == 0);
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels agree bitwise with scalar when available") {
    if (!kernels::avx2_supported()) return;
    for (const std::size_t n : {std::size_t{3}, std::size_t{8}, std::size_t{100},
                                std::size_t{1023}}) {
        const auto x = random_vec(n + 7, n, 4.0);
        const auto y = random_vec(n + 8, n, 4.0);
        CHECK(kernels::avx2::dot(x.data(), y.data(), n) ==
              kernels::scalar::dot(x.data(), y.data(), n));
        CHECK(kernels::avx2::sum_sq_diff(x.data(), y.data(), n) ==
              kernels::scalar::sum_sq_diff(x.data(), y.data(), n));
        auto y1 = y, y2 = y;
        kernels::avx2::axpy(y1.data(), 0.3, x.data(), n);
        kernels::scalar::axpy(y2.data(), 0.3, x.data(), n);
        CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(double)) == 0);
    }
    const auto a = random_vec(1, 11 * 6, 2.0);
    const auto b = random_vec(2, 6 * 19, 2.0);
    std::vector<double> c1(11 * 19), c2(11 * 19);
    kernels::avx2::matmul(a.data(), b.data(), c1.data(), 11, 6, 19);
    kernels::scalar::matmul(a.data(), b.data(), c2.data(), 11, 6, 19);
    CHECK(std::memcmp(c1.data(), c2.data(), c1.size() * sizeof(double)) == 0);
}
#endif

TEST_CASE("backend name is reported") {
    const char* name = kernels::backend_name();
    REQUIRE(name != nullptr);
    CHECK(std::strlen(name) > 0);
}
