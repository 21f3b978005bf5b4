#include "gammamaps/errors.hpp"
#include "gammamaps/numerics.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gammamaps;
using namespace gmtest;

TEST_CASE("operator norm fixtures") {
    CHECK(operator_norm(CMatrix::Zero(3, 3)) == doctest::Approx(0.0));
    CHECK(operator_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
    CMatrix n(2, 2);
    n << 0.0, 2.0, 0.0, 0.0;
    CHECK(operator_norm(n) == doctest::Approx(svd2_max(n)).epsilon(1e-14));
    CHECK(operator_norm(n) == doctest::Approx(2.0));
}

TEST_CASE("operator norm matches the closed-form 2x2 singular value") {
    Gen gen(11);
    for (int i = 0; i < 200; ++i) {
        const CMatrix a = gen.gaussian_matrix(2, 2);
        CHECK(std::abs(operator_norm(a) - svd2_max(a)) <= 1e-12 * svd2_max(a));
    }
}

TEST_CASE("operator norm is unitarily invariant") {
    Gen gen(12);
    for (int i = 0; i < 50; ++i) {
        const int n = gen.integer(1, 6);
        const CMatrix m = gen.gaussian_matrix(n, n);
        const CMatrix u = gen.unitary(n), v = gen.unitary(n);
        CHECK(std::abs(operator_norm(u * m * v) - operator_norm(m)) <= 1e-10);
    }
}

TEST_CASE("is_psd fixtures") {
    CHECK(is_psd(CMatrix::Identity(2, 2), 1e-12));
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1.0;
    CHECK_FALSE(is_psd(d, 1e-12));
    CHECK(is_psd(CMatrix::Ones(2, 2), 1e-12));
    CMatrix skew(2, 2);
    skew << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(is_psd(skew, 1e-12), DomainError);
}

TEST_CASE("gram_factor fixtures") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    const CMatrix l = gram_factor(d);
    REQUIRE(l.cols() == 1);
    CHECK(std::abs(l(0, 0)) == doctest::Approx(2.0));
    CHECK(std::abs(l(1, 0)) <= 1e-15);

    const CMatrix u = gram_factor(CMatrix::Identity(3, 3));
    REQUIRE(u.cols() == 3);
    CHECK(max_abs(u.adjoint() * u - CMatrix::Identity(3, 3)) <= 1e-12);

    const CMatrix o = gram_factor(CMatrix::Ones(2, 2));
    REQUIRE(o.cols() == 1);
    CHECK(std::abs(o(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(o(0, 0) * std::conj(o(1, 0)) - 1.0) <= 1e-12);

    CMatrix ind = CMatrix::Identity(2, 2);
    ind(1, 1) = -0.5;
    CHECK_THROWS_AS(gram_factor(ind), IndefiniteError);
}

TEST_CASE("gram_factor reconstructs random low-rank Grams") {
    Gen gen(13);
    for (int i = 0; i < 100; ++i) {
        const int n = gen.integer(2, 12), r = gen.integer(1, n);
        const CMatrix l = gen.gaussian_matrix(n, r);
        const CMatrix g = l * l.adjoint();
        const double tol = 1e-9;
        const auto gf = gram_factor_full(g, tol);
        CHECK(gf.rank == r);
        CHECK(operator_norm(g - gf.factor * gf.factor.adjoint()) <= tol * operator_norm(g));
        CHECK(is_psd(g, 1e-9 * operator_norm(g)));
        CHECK(numerical_rank(g) == r);
    }
}

TEST_CASE("lurking isometry recovers a unitary from matching Grams") {
    Gen gen(14);
    for (int i = 0; i < 30; ++i) {
        const int n = gen.integer(2, 6), cols = gen.integer(1, 10);
        const CMatrix right = gen.gaussian_matrix(n, cols);
        const CMatrix u = gen.unitary(n);
        const CMatrix left = u * right;
        double residual = 1.0;
        const CMatrix v = lurking_isometry(right, left, 1e-10, &residual);
        CHECK(residual <= 1e-12);
        CHECK(max_abs(v * right - left) <= 1e-10 * (1.0 + max_abs(left)));
        CHECK(operator_norm(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("unit_phase and from_rows") {
    CHECK(unit_phase(Complex(0.0)) == Complex(1.0));
    CHECK(std::abs(unit_phase(Complex(0.0, -3.0)) - Complex(0.0, -1.0)) <= 1e-15);
    CHECK_THROWS_AS(from_rows({{1.0, 2.0}, {3.0}}), DimensionError);
}
