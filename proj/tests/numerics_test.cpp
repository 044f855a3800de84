#include <cmath>
#include <complex>
#include <cstring>
#include <random>

#include "doctest.h"
#include "qwalk/complex_matrix.hpp"
#include "qwalk/errors.hpp"

using qwalk::c64;
using qwalk::ComplexMatrix;
using qwalk::RealSpectrum;

namespace {

ComplexMatrix random_hermitian(int64_t d, uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix m(d);
    for (int64_t i = 0; i < d; ++i) {
        m.at(i, i) = c64{u(eng), 0.0};
        for (int64_t j = i + 1; j < d; ++j) {
            c64 z{u(eng), u(eng)};
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    return m;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("identity spectrum is all ones") {
    RealSpectrum s = hermitian_eigenvalues(ComplexMatrix::identity(4));
    REQUIRE(s.values.size() == 4);
    for (double v : s.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("swap matrix has spectrum {-1, 1}") {
    ComplexMatrix m(2);
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    RealSpectrum s = hermitian_eigenvalues(m);
    CHECK(s.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigenvalue sums match traces across random Hermitian matrices") {
    std::mt19937_64 dims(42);
    for (int rep = 0; rep < 100; ++rep) {
        int64_t d = 2 + static_cast<int64_t>(dims() % 63);
        ComplexMatrix m = random_hermitian(d, 10'000 + static_cast<uint64_t>(rep));
        RealSpectrum s = hermitian_eigenvalues(m);
        REQUIRE(s.values.size() == static_cast<size_t>(d));
        double sum = 0.0;
        for (double v : s.values) sum += v;
        CHECK(std::abs(sum - m.trace().real()) <= 1e-9 * static_cast<double>(d));
        for (size_t i = 1; i < s.values.size(); ++i) CHECK(s.values[i - 1] <= s.values[i]);
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m(3);
    m.at(0, 1) = c64{1.0, 0.0};
    m.at(1, 0) = c64{0.5, 0.0};
    CHECK_THROWS_AS(hermitian_eigenvalues(m), qwalk::NotHermitian);
}

TEST_CASE("non-finite input is rejected, not propagated") {
    ComplexMatrix m = random_hermitian(4, 7);
    m.at(2, 2) = c64{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK(m.hermiticity_error() == std::numeric_limits<double>::infinity());
    CHECK_FALSE(m.is_finite());
    CHECK_THROWS_AS(hermitian_eigenvalues(m), qwalk::NotHermitian);
}

TEST_CASE("unitary conjugation preserves the spectrum") {
    ComplexMatrix m = random_hermitian(4, 99);
    // Givens rotation in the (0, 1) plane with a phase on one axis.
    ComplexMatrix u = ComplexMatrix::identity(4);
    double theta = 0.81;
    u.at(0, 0) = c64{std::cos(theta), 0.0};
    u.at(0, 1) = c64{0.0, std::sin(theta)};
    u.at(1, 0) = c64{0.0, std::sin(theta)};
    u.at(1, 1) = c64{std::cos(theta), 0.0};

    RealSpectrum before = hermitian_eigenvalues(m);
    RealSpectrum after = hermitian_eigenvalues(conjugate_by(u, m));
    REQUIRE(before.values.size() == after.values.size());
    for (size_t i = 0; i < before.values.size(); ++i) {
        CHECK(after.values[i] == doctest::Approx(before.values[i]).epsilon(1e-9));
    }
}

TEST_CASE("conjugation checks dimensions") {
    CHECK_THROWS_AS(conjugate_by(ComplexMatrix::identity(3), ComplexMatrix::identity(4)),
                    qwalk::DimensionMismatch);
}

TEST_CASE("eigensolves are deterministic") {
    ComplexMatrix m = random_hermitian(16, 1234);
    RealSpectrum a = hermitian_eigenvalues(m);
    RealSpectrum b = hermitian_eigenvalues(m);
    CHECK(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)) == 0);
}

TEST_CASE("trace sums the diagonal") {
    ComplexMatrix m(3);
    m.at(0, 0) = c64{1.0, 2.0};
    m.at(1, 1) = c64{-4.0, 0.5};
    m.at(2, 2) = c64{0.25, 0.0};
    CHECK(m.trace() == c64{-2.75, 2.5});
}

}  // TEST_SUITE
