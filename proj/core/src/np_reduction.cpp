#include "gammamaps/np_reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gammamaps/errors.hpp"

namespace gammamaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSingularDen = 1e-12;

Complex checked_div(Complex num, Complex den, const char* who) {
    if (std::abs(den) < kSingularDen) {
        std::ostringstream os;
        os << who << ": denominator " << den << " vanishes";
        throw SingularityError(os.str());
    }
    return num / den;
}

}  // namespace

// ---------------------------------------------------------------- Pick problems

void PickData::validate() const {
    if (nodes.size() != targets.size()) {
        throw DimensionError("pick data: node and target counts differ");
    }
    const auto k = targets.empty() ? 0 : targets[0].rows();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!(std::abs(nodes[j]) < 1.0)) {
            std::ostringstream os;
            os << "pick data: node " << j << " is not inside the unit disc";
            throw DomainError(os.str());
        }
        if (targets[j].rows() != k || targets[j].cols() != k) {
            throw DimensionError("pick data: targets must be square and of equal size");
        }
        if (!all_finite(targets[j])) throw DomainError("pick data: non-finite target");
        for (std::size_t i = 0; i < j; ++i) {
            if (std::abs(nodes[i] - nodes[j]) < 1e-14) {
                std::ostringstream os;
                os << "pick data: nodes " << i << " and " << j << " coincide";
                throw DomainError(os.str());
            }
        }
    }
}

CMatrix pick_matrix(const PickData& data) {
    data.validate();
    const int n = static_cast<int>(data.nodes.size());
    const int k = data.k();
    CMatrix p(n * k, n * k);
    const CMatrix id = CMatrix::Identity(k, k);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Complex d = 1.0 - std::conj(data.nodes[i]) * data.nodes[j];
            p.block(i * k, j * k, k, k) = (id - data.targets[i].adjoint() * data.targets[j]) / d;
        }
    }
    return p;
}

PickCheck pick_check(const PickData& data, double tol) {
    PickCheck c;
    const CMatrix p = pick_matrix(data);
    if (p.size() == 0) {
        c.solvable = true;
        return c;
    }
    c.min_eig = min_eigenvalue(p, 1e-9);
    c.solvable = c.min_eig >= -tol;
    return c;
}

RealizedSchurFunction np_solve(const PickData& data, double tol) {
    const PickCheck chk = pick_check(data, tol);
    if (!chk.solvable) {
        std::ostringstream os;
        os << "Pick matrix is indefinite (min eigenvalue " << chk.min_eig << ")";
        throw UnsolvableError(os.str(), chk.min_eig);
    }
    const int n = static_cast<int>(data.nodes.size());
    const int k = data.k();
    if (n == 0) return RealizedSchurFunction::constant(CMatrix::Zero(k, k));

    const CMatrix p = hermitian_part(pick_matrix(data));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
    const auto& ev = es.eigenvalues();
    const double cut = 1e-12 * std::max(ev(ev.size() - 1), 1.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i) {
        if (ev(i) > cut) keep.push_back(i);
    }
    const int r = static_cast<int>(keep.size());
    CMatrix l(n * k, r);
    for (int c = 0; c < r; ++c) l.col(c) = es.eigenvectors().col(keep[c]) * std::sqrt(ev(keep[c]));

    CMatrix right(k + r, n * k), left(k + r, n * k);
    for (int j = 0; j < n; ++j) {
        const CMatrix h = l.block(j * k, 0, k, r).adjoint();  // r x k
        right.block(0, j * k, k, k) = CMatrix::Identity(k, k);
        right.block(k, j * k, r, k) = data.nodes[j] * h;
        left.block(0, j * k, k, k) = data.targets[j];
        left.block(k, j * k, r, k) = h;
    }
    const CMatrix v = lurking_isometry(right, left, 1e-10);
    return RealizedSchurFunction::from_colligation(v, k);
}

double np_residual(const RealizedSchurFunction& f, const PickData& data) {
    double r = 0.0;
    for (std::size_t j = 0; j < data.nodes.size(); ++j) {
        r = std::max(r, operator_norm(f.evaluate(data.nodes[j]) - data.targets[j]));
    }
    return r;
}

// ---------------------------------------------------------------- Gamma curves

void GammaCurveData::validate() const {
    const int nc = coordinate_count(variant);
    if (is_rational()) {
        if (static_cast<int>(numerators.size()) != nc) {
            std::ostringstream os;
            os << "gamma curve: " << variant_name(variant) << " needs " << nc
               << " numerator polynomials, got " << numerators.size();
            throw DimensionError(os.str());
        }
        RationalFunction{Polynomial{Complex(1.0)}, denominator}.validate();
    }
    if (nodes.size() != points.size()) {
        throw DimensionError("gamma curve: node and point counts differ");
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (!(std::abs(nodes[j]) < 1.0)) throw DomainError("gamma curve: node outside the unit disc");
        if (points[j].variant != variant) throw DimensionError("gamma curve: mixed point variants");
        points[j].validate();
        for (std::size_t i = 0; i < j; ++i) {
            if (std::abs(nodes[i] - nodes[j]) < 1e-14) throw DomainError("gamma curve: repeated node");
        }
    }
}

GammaPoint GammaCurveData::at(Complex lambda) const {
    if (is_rational()) {
        const Complex d = poly_eval(denominator, lambda);
        GammaPoint p;
        p.variant = variant;
        for (const auto& nm : numerators) p.x.push_back(checked_div(poly_eval(nm, lambda), d, "gamma curve"));
        return p;
    }
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (nodes[j] == lambda) return points[j];
    }
    throw DomainError("gamma curve: node form has no point at the requested lambda");
}

RationalFunction GammaCurveData::component(int i) const {
    if (!is_rational()) throw DomainError("gamma curve: components need the rational form");
    return {numerators.at(i), denominator};
}

GammaCurveData GammaCurveData::sampled(const std::vector<Complex>& at_nodes) const {
    GammaCurveData out;
    out.variant = variant;
    out.nodes = at_nodes;
    for (Complex l : at_nodes) out.points.push_back(at(l));
    out.validate();
    return out;
}

namespace {

using IndexSet = std::vector<int>;

// Principal minors in storage order, as index sets with a sign-free sum per coordinate.
std::vector<std::vector<IndexSet>> coordinate_minors(GammaVariant v) {
    switch (v) {
        case GammaVariant::Gamma7:
            return {{{0}}, {{1}}, {{0, 1}}, {{2}}, {{0, 2}}, {{1, 2}}, {{0, 1, 2}}};
        case GammaVariant::Gamma5:
            return {{{0}}, {{0, 1}, {0, 2}}, {{0, 1, 2}}, {{1}, {2}}, {{1, 2}}};
        case GammaVariant::Gamma3:
            return {{{0}}, {{1}}, {{0, 1}}};
    }
    return {};
}

CMatrix principal(const CMatrix& a, const IndexSet& idx) {
    const int s = static_cast<int>(idx.size());
    CMatrix out(s, s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) out(i, j) = a(idx[i], idx[j]);
    }
    return out;
}

Polynomial clean(const Polynomial& p) {
    double top = 0.0;
    for (const auto& c : p) top = std::max(top, std::abs(c));
    Polynomial out(p);
    for (auto& c : out) {
        if (std::abs(c) <= 1e-15 * std::max(1.0, top)) c = 0.0;
    }
    return poly_trim(out, 0.0);
}

}  // namespace

GammaCurveData gamma_curve_from_realization(const RealizedSchurFunction& f, GammaVariant v) {
    const int need = v == GammaVariant::Gamma3 ? 2 : 3;
    if (f.k() != need) {
        std::ostringstream os;
        os << "gamma curve: " << variant_name(v) << " needs a " << need << "x" << need << " function";
        throw DimensionError(os.str());
    }
    const int m = f.m();
    const int n = m + need + 1;
    const CMatrix id = CMatrix::Identity(m, m);
    const auto minors = coordinate_minors(v);
    std::vector<std::vector<Complex>> samples(minors.size(), std::vector<Complex>(n));
    std::vector<Complex> den_samples(n);
    for (int k = 0; k < n; ++k) {
        const Complex lam = std::polar(1.0, kTwoPi * k / n);
        const CMatrix a = id - lam * f.S();
        den_samples[k] = m == 0 ? Complex(1.0) : a.determinant();
        for (std::size_t c = 0; c < minors.size(); ++c) {
            Complex acc(0.0);
            for (const IndexSet& idx : minors[c]) {
                const int s = static_cast<int>(idx.size());
                CMatrix blk(m + s, m + s);
                blk.topLeftCorner(m, m) = a;
                for (int j = 0; j < s; ++j) {
                    blk.block(0, m + j, m, 1) = f.R().col(idx[j]);
                    blk.block(m + j, 0, 1, m) = -lam * f.Q().row(idx[j]);
                }
                blk.bottomRightCorner(s, s) = principal(f.P(), idx);
                acc += blk.determinant();
            }
            samples[c][k] = acc;
        }
    }
    GammaCurveData out;
    out.variant = v;
    out.denominator = clean(interpolate_roots_of_unity(den_samples));
    for (const auto& s : samples) out.numerators.push_back(clean(interpolate_roots_of_unity(s)));
    out.validate();
    return out;
}

GammaCurveData gamma_curve_from_matrix_polynomial(const std::vector<CMatrix>& coeffs, GammaVariant v) {
    const int need = v == GammaVariant::Gamma3 ? 2 : 3;
    if (coeffs.empty()) throw DimensionError("gamma curve: empty matrix polynomial");
    for (const auto& c : coeffs) {
        if (c.rows() != need || c.cols() != need) throw DimensionError("gamma curve: coefficient size mismatch");
    }
    const int deg = static_cast<int>(coeffs.size()) - 1;
    const int n = need * deg + 1;
    const auto minors = coordinate_minors(v);
    std::vector<std::vector<Complex>> samples(minors.size(), std::vector<Complex>(n));
    for (int k = 0; k < n; ++k) {
        const Complex lam = std::polar(1.0, kTwoPi * k / n);
        CMatrix a = CMatrix::Zero(need, need);
        Complex pw(1.0);
        for (const auto& c : coeffs) {
            a += pw * c;
            pw *= lam;
        }
        for (std::size_t c = 0; c < minors.size(); ++c) {
            Complex acc(0.0);
            for (const IndexSet& idx : minors[c]) acc += principal(a, idx).determinant();
            samples[c][k] = acc;
        }
    }
    GammaCurveData out;
    out.variant = v;
    for (const auto& s : samples) out.numerators.push_back(clean(interpolate_roots_of_unity(s)));
    out.validate();
    return out;
}

std::array<Complex, 5> gamma5_transfer_order(const GammaPoint& x) {
    if (x.variant != GammaVariant::Gamma5) throw DimensionError("expected a gamma5 point");
    x.validate();
    return {x[0], x[3], x[1], x[4], x[2]};
}

Complex psi3(const GammaPoint& x, Complex z1, Complex z2) {
    if (x.variant != GammaVariant::Gamma7) throw DimensionError("psi3 expects a gamma7 point");
    x.validate();
    const Complex num = x[0] - x[2] * z2 - x[4] * z1 + x[6] * z1 * z2;
    const Complex den = 1.0 - x[1] * z2 - x[3] * z1 + x[5] * z1 * z2;
    return checked_div(num, den, "psi3");
}

Complex psi3_eval(const GammaCurveData& x, Complex lambda, Complex z1, Complex z2) {
    return psi3(x.at(lambda), z1, z2);
}

Complex psi_lower3(const GammaPoint& x, Complex z) {
    const auto t = gamma5_transfer_order(x);
    const Complex num = t[0] - t[2] * z + t[4] * z * z;
    const Complex den = 1.0 - t[1] * z + t[3] * z * z;
    return checked_div(num, den, "psi_lower3");
}

Complex psi_lower3_eval(const GammaCurveData& x, Complex lambda, Complex z) {
    return psi_lower3(x.at(lambda), z);
}

std::string formulas_name(Gamma5Formulas f) {
    return f == Gamma5Formulas::Printed ? "printed" : "corrected";
}

Gamma5Formulas parse_formulas(const std::string& s) {
    if (s == "printed") return Gamma5Formulas::Printed;
    if (s == "corrected") return Gamma5Formulas::Corrected;
    throw DomainError("unknown formula choice '" + s + "' (expected printed or corrected)");
}

namespace {

// Gamma5 node-reduction slices in transfer order X1..X5.
std::array<Complex, 3> gamma5_reduction_point(const std::array<Complex, 5>& t, Complex z,
                                              Gamma5Formulas f) {
    const Complex den = 2.0 - z * t[1];
    const Complex p1 = checked_div(2.0 * t[0] - z * t[2], den, "gamma5 slice");
    const Complex p2 = f == Gamma5Formulas::Printed
                           ? checked_div(t[1] - 2.0 * z * t[2], den, "gamma5 slice")
                           : checked_div(t[1] - 2.0 * z * t[3], den, "gamma5 slice");
    const Complex p3 = checked_div(t[2] - 2.0 * z * t[4], den, "gamma5 slice");
    return {p1, p2, p3};
}

}  // namespace

std::array<Complex, 3> slice_point(const GammaPoint& x, Complex z, Gamma5Formulas formulas) {
    x.validate();
    switch (x.variant) {
        case GammaVariant::Gamma7: {
            const Complex den = 1.0 - z * x[1];
            return {checked_div(x[0] - z * x[2], den, "gamma7 slice"),
                    checked_div(x[3] - z * x[5], den, "gamma7 slice"),
                    checked_div(x[4] - z * x[6], den, "gamma7 slice")};
        }
        case GammaVariant::Gamma5:
            return gamma5_reduction_point(gamma5_transfer_order(x), z, formulas);
        case GammaVariant::Gamma3:
            break;
    }
    throw DimensionError("slices are defined for gamma7 and gamma5 data");
}

std::array<RationalFunction, 3> slice_coordinates(const GammaCurveData& x, Complex z,
                                                  Gamma5Formulas formulas) {
    if (!x.is_rational()) throw DomainError("slice_coordinates needs a rational curve");
    x.validate();
    const auto& n = x.numerators;
    const Polynomial& d = x.denominator;
    std::array<RationalFunction, 3> out;
    if (x.variant == GammaVariant::Gamma7) {
        const Polynomial den = poly_sub(d, poly_scale(n[1], z));
        out = {RationalFunction{poly_sub(n[0], poly_scale(n[2], z)), den},
               RationalFunction{poly_sub(n[3], poly_scale(n[5], z)), den},
               RationalFunction{poly_sub(n[4], poly_scale(n[6], z)), den}};
    } else if (x.variant == GammaVariant::Gamma5) {
        // transfer order: X1 = n0, X2 = n3, X3 = n1, X4 = n4, X5 = n2
        const Polynomial den = poly_sub(poly_scale(d, 2.0), poly_scale(n[3], z));
        const Polynomial& second = formulas == Gamma5Formulas::Printed ? n[1] : n[4];
        out = {RationalFunction{poly_sub(poly_scale(n[0], 2.0), poly_scale(n[1], z)), den},
               RationalFunction{poly_sub(n[3], poly_scale(second, 2.0 * z)), den},
               RationalFunction{poly_sub(n[1], poly_scale(n[2], 2.0 * z)), den}};
    } else {
        throw DimensionError("slices are defined for gamma7 and gamma5 data");
    }
    for (const auto& r : out) r.validate();
    return out;
}

// ---------------------------------------------------------------- 2x2 slices

namespace {

// (F11, F22, det) used by the 2x2 builder. Gamma5 printed mode keeps the
// determinant denominator 1 - X2 z next to the 2 - X2 z diagonal entries.
std::array<RationalFunction, 3> slice_entries(const GammaCurveData& x, Complex z, Gamma5Formulas f) {
    if (x.variant == GammaVariant::Gamma7) return slice_coordinates(x, z, f);
    if (x.variant != GammaVariant::Gamma5) throw DimensionError("slices are defined for gamma7 and gamma5 data");
    auto out = slice_coordinates(x, z, Gamma5Formulas::Corrected);
    if (f == Gamma5Formulas::Printed) {
        const auto& n = x.numerators;
        out[2] = RationalFunction{poly_sub(n[1], poly_scale(n[2], 2.0 * z)),
                                  poly_sub(x.denominator, poly_scale(n[3], z))};
        out[2].validate();
    }
    return out;
}

}  // namespace

CMatrix SlicedSchur2x2::evaluate(Complex lambda) const {
    CMatrix m(2, 2);
    m << f11(lambda), f12(lambda), f21(lambda), f22(lambda);
    return m;
}

Complex SlicedSchur2x2::f12(Complex lambda) const {
    if (triangular) return 0.0;
    return offdiag.inner(lambda) * offdiag.outer_sqrt(lambda);
}

Complex SlicedSchur2x2::f21(Complex lambda) const {
    if (triangular) return 0.0;
    return offdiag.outer_sqrt(lambda);
}

Complex SlicedSchur2x2::transfer(Complex lambda, Complex w) const {
    const CMatrix m = evaluate(lambda);
    return m(0, 0) + checked_div(m(0, 1) * m(1, 0) * w, 1.0 - m(1, 1) * w, "slice transfer");
}

std::pair<double, double> SlicedSchur2x2::boundary_moduli(int k) const {
    if (triangular) return {0.0, 0.0};
    const Complex w = offdiag.boundary_point(k);
    const Complex root = offdiag.outer_sqrt_boundary(k);
    return {std::abs(offdiag.inner(w) * root), std::abs(root)};
}

SlicedSchur2x2 build_slice_schur(const GammaCurveData& x, Complex z, const SliceOptions& opts) {
    if (!(std::abs(z) < 1.0)) throw DomainError("build_slice_schur: slice parameter must lie in the disc");
    SlicedSchur2x2 s;
    s.z = z;
    s.variant = x.variant;
    const auto e = slice_entries(x, z, opts.formulas);
    s.f11 = e[0];
    s.f22 = e[1];
    s.det = e[2];
    RationalFunction prod = s.f11 * s.f22 - s.det;
    prod.num = poly_trim(prod.num, 0.0);
    double scale = 0.0;
    for (const auto& c : s.f11.num) scale = std::max(scale, std::abs(c));
    for (const auto& c : s.f22.num) scale = std::max(scale, std::abs(c));
    for (const auto& c : s.det.num) scale = std::max(scale, std::abs(c));
    double pscale = 0.0;
    for (const auto& c : prod.den) pscale = std::max(pscale, std::abs(c));
    s.triangular = poly_is_zero(prod.num, 1e-12 * std::max(1.0, scale * scale) * std::max(1.0, pscale));
    if (!s.triangular) {
        InnerOuterOptions io;
        io.n_boundary = opts.n_boundary;
        io.tol = opts.factor_tol;
        s.offdiag = inner_outer(prod, io);
    }
    Complex worst(0.0);
    for (int i = 0; i <= opts.check_radii; ++i) {
        const double r = 0.98 * i / std::max(1, opts.check_radii);
        const int na = i == 0 ? 1 : opts.check_angles;
        for (int k = 0; k < na; ++k) {
            const Complex lam = std::polar(r, kTwoPi * (k + 0.5 * (i % 2)) / na);
            const CMatrix m = s.evaluate(lam);
            const double nv = operator_norm(m);
            if (nv > s.max_norm) {
                s.max_norm = nv;
                worst = lam;
            }
            const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            s.det_error = std::max(s.det_error, std::abs(det - s.det(lam)));
        }
    }
    if (s.max_norm > 1.0 + opts.tol) {
        std::ostringstream os;
        os << "build_slice_schur: slice at z = " << z << " is not contractive (norm " << s.max_norm
           << " at lambda = " << worst << "); the data is not a Gamma-valued analytic map";
        throw DomainError(os.str());
    }
    if (s.det_error > opts.tol) {
        std::ostringstream os;
        os << "build_slice_schur: determinant mismatch " << s.det_error;
        throw NumericalError(os.str());
    }
    return s;
}

// ---------------------------------------------------------------- reductions

std::string SplitRule::name() const {
    switch (kind) {
        case Kind::Balanced: return "balanced";
        case Kind::LeftOne: return "left-one";
        case Kind::User: return "user";
    }
    return "";
}

SplitRule parse_split(const std::string& s) {
    if (s == "balanced") return SplitRule::balanced();
    if (s == "left-one") return SplitRule::left_one();
    throw DomainError("unknown split rule '" + s + "' (expected balanced or left-one)");
}

std::pair<Complex, Complex> split_product(Complex product, const SplitRule& rule, std::size_t index) {
    const bool zero = std::abs(product) <= 1e-14;
    switch (rule.kind) {
        case SplitRule::Kind::Balanced: {
            if (zero) return {0.0, 0.0};
            const Complex s = std::sqrt(product);
            return {s, s};
        }
        case SplitRule::Kind::LeftOne:
            if (zero) return {0.0, 0.0};
            return {product, 1.0};
        case SplitRule::Kind::User: {
            if (index >= rule.pairs.size()) throw DimensionError("user split: not enough (b, c) pairs");
            const auto pr = rule.pairs[index];
            if (std::abs(pr.first * pr.second - product) > 1e-9 * std::max(1.0, std::abs(product))) {
                std::ostringstream os;
                os << "user split: pair " << index << " has product " << pr.first * pr.second
                   << " but the constraint requires " << product;
                throw ConsistencyError(os.str());
            }
            return pr;
        }
    }
    return {0.0, 0.0};
}

namespace {

PickData reduce_with(const GammaCurveData& data, const SplitRule& rule,
                     const std::function<std::array<Complex, 3>(const GammaPoint&)>& slicer) {
    data.validate();
    PickData out;
    out.nodes = data.nodes;
    for (std::size_t j = 0; j < data.nodes.size(); ++j) {
        const auto s = slicer(data.points[j]);
        Complex product = s[0] * s[1] - s[2];
        const double scale = std::max({1.0, std::abs(s[0] * s[1]), std::abs(s[2])});
        if (std::abs(product) <= 1e-14 * scale) product = 0.0;
        const auto bc = split_product(product, rule, j);
        CMatrix w(2, 2);
        w << s[0], bc.first, bc.second, s[1];
        out.targets.push_back(w);
    }
    return out;
}

}  // namespace

PickData reduce_gamma7(const GammaCurveData& data, Complex z2, const SplitRule& rule) {
    if (data.variant != GammaVariant::Gamma7) throw DimensionError("reduce_gamma7 expects gamma7 data");
    return reduce_with(data, rule, [z2](const GammaPoint& x) {
        const auto s = slice_point(x, z2);
        return std::array<Complex, 3>{s[1], s[0], s[2]};
    });
}

PickData reduce_gamma5(const GammaCurveData& data, Complex z, const SplitRule& rule,
                       Gamma5Formulas formulas) {
    if (data.variant != GammaVariant::Gamma5) throw DimensionError("reduce_gamma5 expects gamma5 data");
    return reduce_with(data, rule, [z, formulas](const GammaPoint& x) { return slice_point(x, z, formulas); });
}

bool CertifyReport::unsolvable_everywhere() const {
    for (const auto& c : cells) {
        if (c.solvable) return false;
    }
    return true;
}

std::vector<Complex> default_z_grid() {
    return {Complex(0.0, 0.0),  Complex(0.3, 0.0),  Complex(-0.3, 0.0),
            Complex(0.6, 0.0),  Complex(-0.6, 0.0), Complex(0.0, 0.3),
            Complex(0.0, -0.3), Complex(0.0, 0.6),  Complex(0.0, -0.6)};
}

namespace {

CertifyReport certify_with(const std::vector<Complex>& grid, const std::vector<SplitRule>& rules,
                           double tol,
                           const std::function<PickData(Complex, const SplitRule&)>& reduce) {
    CertifyReport rep;
    for (const auto& rule : rules) {
        bool all = !grid.empty();
        for (Complex z : grid) {
            CertifyCell cell;
            cell.z = z;
            cell.split = rule.name();
            const PickData pd = reduce(z, rule);
            const PickCheck chk = pick_check(pd, tol);
            cell.solvable = chk.solvable;
            cell.min_eig = chk.min_eig;
            if (chk.solvable) {
                const RealizedSchurFunction f = np_solve(pd, tol);
                cell.residual = np_residual(f, pd);
                cell.state_dim = f.m();
            }
            all = all && cell.solvable;
            rep.cells.push_back(cell);
        }
        if (all) rep.fully_solvable_splits.push_back(rule.name());
    }
    return rep;
}

}  // namespace

CertifyReport certify_gamma7_interpolation(const GammaCurveData& data, const std::vector<Complex>& z2_grid,
                                           const std::vector<SplitRule>& rules, double tol) {
    return certify_with(z2_grid, rules, tol,
                        [&](Complex z, const SplitRule& r) { return reduce_gamma7(data, z, r); });
}

CertifyReport certify_gamma5_interpolation(const GammaCurveData& data, const std::vector<Complex>& z_grid,
                                           const std::vector<SplitRule>& rules, double tol,
                                           Gamma5Formulas formulas) {
    return certify_with(z_grid, rules, tol,
                        [&](Complex z, const SplitRule& r) { return reduce_gamma5(data, z, r, formulas); });
}

}  // namespace gammamaps
