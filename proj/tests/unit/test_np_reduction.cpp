#include <numbers>

#include "gammamaps/errors.hpp"
#include "gammamaps/mu_gamma.hpp"
#include "gammamaps/np_reduction.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gammamaps;
using namespace gmtest;

namespace {

PickData scalar_data(std::vector<Complex> nodes, std::vector<Complex> targets) {
    PickData d;
    d.nodes = std::move(nodes);
    for (Complex w : targets) d.targets.push_back(CMatrix::Constant(1, 1, w));
    return d;
}

GammaCurveData constant_curve(const CMatrix& a, GammaVariant v) {
    GammaCurveData c;
    c.variant = v;
    for (Complex x : pi_coordinates(a, v).x) c.numerators.push_back({x});
    return c;
}

}  // namespace

TEST_CASE("Pick matrix fixtures") {
    for (double r : {0.0, 0.2, 0.5, 0.5000001, 0.7})
        CHECK(pick_check(scalar_data({0.0, 0.5}, {0.0, r})).solvable == (r <= 0.5));
    const auto single = pick_matrix(scalar_data({0.3}, {0.0}));
    CHECK(std::abs(single(0, 0) - 1.0 / (1.0 - 0.09)) <= 1e-15);
    PickData one;
    one.nodes = {0.0};
    one.targets = {CMatrix::Zero(2, 2)};
    CHECK(max_abs(pick_matrix(one) - CMatrix::Identity(2, 2)) == 0.0);
    const auto p = pick_matrix(scalar_data({0.0, 0.5}, {0.0, 0.5}));
    CHECK(max_abs(p - CMatrix::Ones(2, 2)) <= 1e-15);
    CHECK(numerical_rank(p) == 1);
}

TEST_CASE("Pick data validation") {
    CHECK_THROWS_AS(scalar_data({0.1, 0.1}, {0.0, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(scalar_data({1.0}, {0.0}).validate(), DomainError);
    PickData mixed;
    mixed.nodes = {0.0, 0.5};
    mixed.targets = {CMatrix::Zero(1, 1), CMatrix::Zero(2, 2)};
    CHECK_THROWS_AS(mixed.validate(), DimensionError);
}

TEST_CASE("scalar interpolation fixtures") {
    Gen gen(81);
    PickData one;
    one.nodes = {0.0};
    one.targets = {gen.with_norm(2, 0.6)};
    const auto c = np_solve(one);
    CHECK(max_abs(c(0.0) - one.targets[0]) <= 1e-12);

    const auto id = np_solve(scalar_data({0.0, 0.5}, {0.0, 0.5}));
    CHECK(std::abs(id(0.25)(0, 0) - 0.25) <= 1e-8);

    try {
        np_solve(scalar_data({0.0, 0.5}, {0.0, 0.6}));
        FAIL("expected an unsolvable problem");
    } catch (const UnsolvableError& e) {
        CHECK(e.min_eig() < 0.0);
    }
}

TEST_CASE("matrix interpolation data sampled from Schur functions") {
    Gen gen(82);
    for (int i = 0; i < 15; ++i) {
        const int k = gen.integer(1, 3), n = gen.integer(1, 5);
        const auto f = random_schur(k, gen.integer(0, 4), 8200 + static_cast<std::uint64_t>(i));
        PickData d;
        for (int j = 0; j < n; ++j) {
            d.nodes.push_back(gen.in_disc(0.9));
            d.targets.push_back(f(d.nodes.back()));
        }
        const auto sol = np_solve(d);
        CHECK(np_residual(sol, d) <= 1e-8);
        CHECK(sol.m() <= k * n);
        CHECK(verify_schur(sol, 10, 1e-9).pass);
    }
}

TEST_CASE("upper transfer function") {
    Gen gen(83);
    const Complex a(0.3, 0.2), b(-0.5, 0.1), c(0.4, -0.4);
    const auto d = pi_coordinates(diag3(a, b, c), GammaVariant::Gamma7);
    for (int i = 0; i < 10; ++i) CHECK(std::abs(psi3(d, gen.in_disc(), gen.in_disc()) - a) <= 1e-14);
    const auto x = pi_coordinates(gen.gaussian_matrix(3, 3), GammaVariant::Gamma7);
    CHECK(psi3(x, 0.0, 0.0) == x[0]);
    for (int i = 0; i < 20; ++i) {
        const CMatrix m = gen.with_norm(3, gen.uniform(0.1, 1.0));
        const auto p = pi_coordinates(m, GammaVariant::Gamma7);
        const Complex z1 = gen.in_disc(), z2 = gen.in_disc();
        CMatrix z = CMatrix::Zero(2, 2);
        z(0, 0) = z2;
        z(1, 1) = z1;
        const Complex v = psi3(p, z1, z2);
        CHECK(std::abs(v - lft_value(m, z)) <= 1e-12);
        CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("lower transfer function") {
    Gen gen(84);
    const auto x = pi_coordinates(gen.gaussian_matrix(3, 3), GammaVariant::Gamma5);
    CHECK(psi_lower3(x, 0.0) == x[0]);
    const Complex a(0.3, 0.2), b(-0.5, 0.1), c(0.4, -0.4);
    const auto d = pi_coordinates(diag3(a, b, c), GammaVariant::Gamma5);
    for (int i = 0; i < 10; ++i) {
        const Complex z = gen.in_disc(0.3);
        const Complex direct = (a - z * (a * b + a * c) + z * z * a * b * c) / (1.0 - z * (b + c) + z * z * b * c);
        CHECK(std::abs(psi_lower3(d, z) - direct) <= 1e-14);
    }
    for (int i = 0; i < 20; ++i) {
        const CMatrix m = gen.with_norm(3, gen.uniform(0.1, 1.0));
        const Complex z = gen.in_disc();
        CMatrix zz = CMatrix::Identity(2, 2) * z;
        CHECK(std::abs(psi_lower3(pi_coordinates(m, GammaVariant::Gamma5), z) - lft_value(m, zz)) <= 1e-12);
    }
    const auto singular = pi_coordinates(CMatrix::Identity(3, 3), GammaVariant::Gamma5);
    CHECK_THROWS_AS(psi_lower3(singular, 1.0), SingularityError);
    CHECK_THROWS_AS(psi3(pi_coordinates(CMatrix::Identity(3, 3), GammaVariant::Gamma7), 1.0, 0.0), SingularityError);
}

TEST_CASE("slice coordinates") {
    const Complex a(0.3, 0.2), b(-0.5, 0.1), c(0.4, -0.4);
    const auto d = constant_curve(diag3(a, b, c), GammaVariant::Gamma7);
    for (Complex z : {Complex(0.0), Complex(0.5, 0.2), Complex(-0.7)}) {
        const auto s = slice_coordinates(d, z);
        CHECK(std::abs(s[0](0.1) - a) <= 1e-14);
        CHECK(std::abs(s[1](0.1) - c) <= 1e-14);
        CHECK(std::abs(s[2](0.1) - a * c) <= 1e-14);
    }
    Gen gen(85);
    const auto x7 = pi_coordinates(gen.with_norm(3, 0.9), GammaVariant::Gamma7);
    const auto s7 = slice_point(x7, 0.0);
    CHECK(s7[0] == x7[0]);
    CHECK(s7[1] == x7[3]);
    CHECK(s7[2] == x7[4]);
    const auto x5 = pi_coordinates(gen.with_norm(3, 0.9), GammaVariant::Gamma5);
    const auto t = gamma5_transfer_order(x5);
    for (auto f : {Gamma5Formulas::Printed, Gamma5Formulas::Corrected}) {
        const auto s5 = slice_point(x5, 0.0, f);
        CHECK(std::abs(s5[0] - t[0]) <= 1e-15);
        CHECK(std::abs(s5[1] - t[1] / 2.0) <= 1e-15);
        CHECK(std::abs(s5[2] - t[2] / 2.0) <= 1e-15);
    }
    CHECK(parse_formulas(formulas_name(Gamma5Formulas::Corrected)) == Gamma5Formulas::Corrected);
    CHECK_THROWS_AS(parse_formulas("other"), DomainError);
}

TEST_CASE("curves from realizations and matrix polynomials") {
    Gen gen(86);
    const auto f = random_schur(3, 3, 86, 0.9);
    const auto curve = gamma_curve_from_realization(f, GammaVariant::Gamma7);
    const auto curve5 = gamma_curve_from_realization(f, GammaVariant::Gamma5);
    for (int i = 0; i < 10; ++i) {
        const Complex l = gen.in_disc(0.95);
        const auto ref = pi_coordinates(f(l), GammaVariant::Gamma7);
        const auto got = curve.at(l);
        for (std::size_t j = 0; j < 7; ++j) CHECK(std::abs(got[j] - ref[j]) <= 1e-10);
        const auto ref5 = pi_coordinates(f(l), GammaVariant::Gamma5);
        for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(curve5.at(l)[j] - ref5[j]) <= 1e-10);
    }
    const CMatrix c0 = gen.gaussian_matrix(3, 3), c1 = gen.gaussian_matrix(3, 3);
    const auto poly = gamma_curve_from_matrix_polynomial({c0, c1}, GammaVariant::Gamma7);
    const Complex l(0.2, -0.3);
    const auto ref = pi_coordinates(c0 + l * c1, GammaVariant::Gamma7);
    for (std::size_t j = 0; j < 7; ++j) CHECK(std::abs(poly.at(l)[j] - ref[j]) <= 1e-10);
    const auto nodes = poly.sampled({l, 0.0});
    CHECK(nodes.points.size() == 2);
    CHECK(std::abs(nodes.at(l)[6] - ref[6]) <= 1e-10);
}

TEST_CASE("slice builder fixtures") {
    const Complex a(0.3, 0.2), b(-0.5, 0.1), c(0.4, -0.4);
    const auto d = constant_curve(diag3(a, b, c), GammaVariant::Gamma7);
    const auto tri = build_slice_schur(d, 0.3);
    CHECK(tri.triangular);
    CHECK(max_abs(tri.evaluate(0.2) - (CMatrix(2, 2) << a, 0.0, 0.0, c).finished()) <= 1e-12);

    Gen gen(87);
    const CMatrix m = gen.with_norm(3, 0.8);
    const auto k = constant_curve(m, GammaVariant::Gamma7);
    const auto x = pi_coordinates(m, GammaVariant::Gamma7);
    const auto s = build_slice_schur(k, 0.0);
    const CMatrix v = s.evaluate(Complex(0.3, 0.1));
    CHECK(std::abs(v(0, 0) - x[0]) <= 1e-12);
    CHECK(std::abs(v(1, 1) - x[3]) <= 1e-12);
    CHECK(std::abs(v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0) - x[4]) <= 1e-8);
    CHECK(s.f21(0.0).real() >= -1e-10);
    CHECK(std::abs(s.f21(0.0).imag()) <= 1e-10);
    CHECK(std::abs(v(1, 0) - s.f21(0.0)) <= 1e-8);

    auto big = k;
    for (auto& p : big.numerators) p = poly_scale(p, 3.0);
    CHECK_THROWS_AS(build_slice_schur(big, 0.0), DomainError);
    CHECK_THROWS_AS(build_slice_schur(k, 1.0), DomainError);
}

TEST_CASE("slices of Schur-valued curves") {
    Gen gen(88);
    for (std::uint64_t s = 0; s < 3; ++s) {
        const auto f = random_schur(3, 2, 8800 + s, 0.9);
        const auto curve = gamma_curve_from_realization(f, GammaVariant::Gamma7);
        const Complex z2 = gen.in_disc(0.8);
        const auto sl = build_slice_schur(curve, z2);
        const auto y = slice_coordinates(curve, z2);
        for (int i = 0; i < 20; ++i) {
            const Complex l = gen.in_disc(0.97), z1 = gen.in_disc(0.97);
            const CMatrix v = sl.evaluate(l);
            CHECK(svd2_max(v) <= 1.0 + 1e-6);
            CHECK(std::abs(v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0) - y[2](l)) <= 1e-8);
            CHECK(std::abs(sl.transfer(l, z1) - psi3_eval(curve, l, z1, z2)) <= 1e-8);
            CHECK(std::abs(sl.transfer(l, z1) - lft_value(f(l), (CMatrix(2, 2) << z2, 0.0, 0.0, z1).finished())) <= 1e-8);
        }
        if (!sl.triangular)
            for (int k = 0; k < sl.offdiag.n_boundary(); k += 7) {
                const auto [m12, m21] = sl.boundary_moduli(k);
                CHECK(std::abs(m12 - m21) <= 1e-6);
            }
        CHECK(sl.f21(0.0).real() >= -1e-10);
    }
}

TEST_CASE("gamma5 slices in both formula modes") {
    Gen gen(89);
    const auto f = random_schur(3, 2, 89, 0.9);
    const auto curve = gamma_curve_from_realization(f, GammaVariant::Gamma5);
    const Complex z = gen.in_disc(0.5);
    SliceOptions corrected;
    corrected.formulas = Gamma5Formulas::Corrected;
    const auto sc = build_slice_schur(curve, z, corrected);
    const auto y = slice_coordinates(curve, z, Gamma5Formulas::Corrected);
    for (int i = 0; i < 10; ++i) {
        const Complex l = gen.in_disc(0.95);
        const CMatrix v = sc.evaluate(l);
        CHECK(std::abs(v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0) - y[2](l)) <= 1e-8);
        CHECK(svd2_max(v) <= 1.0 + 1e-6);
    }
    const auto sp = slice_coordinates(curve, z, Gamma5Formulas::Printed);
    CHECK(std::abs(sp[0](0.2) - y[0](0.2)) <= 1e-14);
    CHECK(std::abs(sp[2](0.2) - y[2](0.2)) <= 1e-14);
}

TEST_CASE("split rules") {
    const Complex p(0.3, -0.4);
    const auto [b, c] = split_product(p, SplitRule::balanced(), 0);
    CHECK(std::abs(b * c - p) <= 1e-12);
    CHECK(b == c);
    const auto [l1, l2] = split_product(p, SplitRule::left_one(), 0);
    CHECK(l1 == p);
    CHECK(l2 == Complex(1.0));
    const auto [z1, z2] = split_product(0.0, SplitRule::left_one(), 0);
    CHECK(z1 == Complex(0.0));
    CHECK(z2 == Complex(0.0));
    const auto user = SplitRule::user({{2.0, 0.5}, {1.0, 1.0}});
    CHECK(split_product(1.0, user, 0).first == Complex(2.0));
    CHECK(parse_split("left-one").kind == SplitRule::Kind::LeftOne);
    CHECK(parse_split("balanced").name() == "balanced");
    CHECK_THROWS_AS(parse_split("greedy"), DomainError);
}

TEST_CASE("gamma7 node reduction") {
    Gen gen(90);
    const CMatrix m = gen.with_norm(3, 0.7);
    GammaCurveData one;
    one.variant = GammaVariant::Gamma7;
    one.nodes = {0.2};
    one.points = {pi_coordinates(m, GammaVariant::Gamma7)};
    const auto d = reduce_gamma7(one, 0.3, SplitRule::balanced());
    CHECK(pick_check(d).solvable);
    const auto& w = d.targets[0];
    const auto& x = one.points[0];
    const Complex den = 1.0 - 0.3 * x[1];
    const Complex s1 = (x[3] - 0.3 * x[5]) / den, s2 = (x[0] - 0.3 * x[2]) / den, s3 = (x[4] - 0.3 * x[6]) / den;
    CHECK(std::abs(w(0, 0) - s1) <= 1e-14);
    CHECK(std::abs(w(1, 1) - s2) <= 1e-14);
    CHECK(std::abs(w(0, 1) * w(1, 0) - (s1 * s2 - s3)) <= 1e-12);

    GammaCurveData diag = one;
    diag.points = {pi_coordinates(diag3(0.3, 0.2, -0.4), GammaVariant::Gamma7)};
    const auto dd = reduce_gamma7(diag, 0.5, SplitRule::balanced());
    CHECK(std::abs(dd.targets[0](0, 1)) <= 1e-12);
    CHECK(std::abs(dd.targets[0](1, 0)) <= 1e-12);
}

TEST_CASE("gamma5 node reduction") {
    Gen gen(91);
    GammaCurveData one;
    one.variant = GammaVariant::Gamma5;
    one.nodes = {0.1};
    one.points = {pi_coordinates(gen.with_norm(3, 0.7), GammaVariant::Gamma5)};
    for (auto f : {Gamma5Formulas::Printed, Gamma5Formulas::Corrected}) {
        const auto d = reduce_gamma5(one, 0.2, SplitRule::balanced(), f);
        const auto s = slice_point(one.points[0], 0.2, f);
        const auto& w = d.targets[0];
        CHECK(std::abs(w(0, 1) * w(1, 0) - (s[0] * s[1] - s[2])) <= 1e-12);
    }
    GammaCurveData diag = one;
    diag.points = {pi_coordinates(diag3(0.3, 0.2, 0.2), GammaVariant::Gamma5)};
    const auto dd = reduce_gamma5(diag, 0.4, SplitRule::balanced(), Gamma5Formulas::Corrected);
    const auto sd = slice_point(diag.points[0], 0.4, Gamma5Formulas::Corrected);
    CHECK(std::abs(dd.targets[0](0, 1) * dd.targets[0](1, 0) - (sd[0] * sd[1] - sd[2])) <= 1e-12);
    CHECK(std::abs(dd.targets[0](0, 1)) <= 1e-12);
    CHECK(std::abs(dd.targets[0](1, 0)) <= 1e-12);
}

TEST_CASE("certification reports") {
    Gen gen(92);
    const CMatrix a0 = gen.with_norm(3, 0.9);
    GammaCurveData single;
    single.variant = GammaVariant::Gamma7;
    single.nodes = {0.0};
    single.points = {pi_coordinates(a0, GammaVariant::Gamma7)};
    const auto all = certify_gamma7_interpolation(single, default_z_grid(), {SplitRule::balanced()});
    CHECK(all.solvable());
    CHECK(all.cells.size() == 9);

    const auto line = gamma_curve_from_matrix_polynomial({CMatrix::Zero(3, 3), a0}, GammaVariant::Gamma7)
                          .sampled({Complex(0.1, 0.2), -0.35, Complex(0.3, -0.25)});
    const std::vector<Complex> five{0.0, 0.3, -0.3, Complex(0.0, 0.3), Complex(0.0, -0.3)};
    const auto rep = certify_gamma7_interpolation(line, five, {SplitRule::balanced()});
    CHECK(rep.solvable());
    for (const auto& c : rep.cells) CHECK(c.residual <= 1e-8);

    auto scaled = line;
    for (auto& x : scaled.points[1].x) x *= 3.0;
    const auto bad = certify_gamma7_interpolation(scaled, five, {SplitRule::balanced(), SplitRule::left_one()});
    CHECK_FALSE(bad.solvable());
    CHECK(bad.unsolvable_everywhere());
    for (const auto& c : bad.cells) CHECK(c.min_eig < 0.0);
    CHECK(default_z_grid().size() == 9);
}
