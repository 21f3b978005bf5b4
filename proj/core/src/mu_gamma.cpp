#include "gammamaps/mu_gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gammamaps/errors.hpp"

namespace gammamaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex cis(double t) { return {std::cos(t), std::sin(t)}; }

Complex det2(const CMatrix& a, int i, int j) {
    return a(i, i) * a(j, j) - a(i, j) * a(j, i);
}

// Largest root modulus of t^3 - c1 t^2 + c2 t - c3.
double cubic_radius(Complex c1, Complex c2, Complex c3) {
    // Depressed cubic via t = s + c1/3.
    const Complex a = -c1, b = c2, c = -c3;
    const Complex p = b - a * a / 3.0;
    const Complex q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const Complex disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    Complex u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
    if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
    Complex s0 = std::abs(u) < 1e-300 ? Complex(0.0) : u - p / (3.0 * u);
    Complex t0 = s0 - a / 3.0;
    auto f = [&](Complex t) { return ((t + a) * t + b) * t + c; };
    auto df = [&](Complex t) { return (3.0 * t + 2.0 * a) * t + b; };
    for (int it = 0; it < 3; ++it) {
        const Complex d = df(t0);
        if (std::abs(d) < 1e-300) break;
        t0 -= f(t0) / d;
    }
    // Deflate: t^2 + (a + t0) t + (b + (a + t0) t0)
    const Complex qb = a + t0;
    const Complex qc = b + qb * t0;
    const Complex sq = std::sqrt(qb * qb - 4.0 * qc);
    const Complex r1 = (-qb + sq) * 0.5;
    const Complex r2 = (-qb - sq) * 0.5;
    return std::max({std::abs(t0), std::abs(r1), std::abs(r2)});
}

double quadratic_radius(Complex c1, Complex c2) {
    const Complex sq = std::sqrt(c1 * c1 - 4.0 * c2);
    return std::max(std::abs((c1 + sq) * 0.5), std::abs((c1 - sq) * 0.5));
}

struct Evaluator {
    // phases are (1, u2, u3) for 3x3 scalar, (1, u) for the others.
    const CMatrix& a;
    const BlockStructure& e;
    Complex a11, a22, a33, m12, m13, m23, det;

    Evaluator(const CMatrix& a_, const BlockStructure& e_) : a(a_), e(e_) {
        a11 = a(0, 0);
        a22 = a(1, 1);
        m12 = det2(a, 0, 1);
        if (e.n == 3) {
            a33 = a(2, 2);
            m13 = det2(a, 0, 2);
            m23 = det2(a, 1, 2);
            det = a.determinant();
        }
    }

    double rho(double t2, double t3) const {
        if (e.n == 2) {
            const Complex u = cis(t2);
            return quadratic_radius(a11 + a22 * u, m12 * u);
        }
        if (e.s() == 3) {
            const Complex u2 = cis(t2), u3 = cis(t3);
            return cubic_radius(a11 + a22 * u2 + a33 * u3,
                                m12 * u2 + m13 * u3 + m23 * u2 * u3,
                                det * u2 * u3);
        }
        const Complex u = cis(t2);
        return cubic_radius(a11 + (a22 + a33) * u, (m12 + m13) * u + m23 * u * u,
                            det * u * u);
    }

    // Eigenvalue-based value; the closed-form roots lose accuracy at repeated eigenvalues.
    double rho_accurate(double t2, double t3) const {
        std::vector<Complex> phases{Complex(1.0), cis(t2)};
        if (e.s() == 3) phases.push_back(cis(t3));
        return rho_structured(a, e, phases);
    }
};

template <class F>
double golden_max(F f, double lo, double hi, int iters, double* arg) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + g * (hi - lo); f2 = f(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - g * (hi - lo); f1 = f(x1);
        }
    }
    if (f1 >= f2) { *arg = x1; return f1; }
    *arg = x2;
    return f2;
}

}  // namespace

BlockStructure BlockStructure::three_scalar() { return {3, {1, 1, 1}}; }
BlockStructure BlockStructure::one_two() { return {3, {1, 2}}; }
BlockStructure BlockStructure::two_scalar() { return {2, {1, 1}}; }

void BlockStructure::validate() const {
    if (*this == three_scalar() || *this == one_two() || *this == two_scalar()) return;
    throw DimensionError("unsupported block structure " + name());
}

std::string BlockStructure::name() const {
    std::ostringstream os;
    os << "E(" << n << ";" << s() << ";";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << ")";
    return os.str();
}

int coordinate_count(GammaVariant v) {
    switch (v) {
        case GammaVariant::Gamma7: return 7;
        case GammaVariant::Gamma5: return 5;
        case GammaVariant::Gamma3: return 3;
    }
    return 0;
}

std::string variant_name(GammaVariant v) {
    switch (v) {
        case GammaVariant::Gamma7: return "gamma7";
        case GammaVariant::Gamma5: return "gamma5";
        case GammaVariant::Gamma3: return "gamma3";
    }
    return "";
}

GammaVariant parse_variant(const std::string& s) {
    if (s == "gamma7") return GammaVariant::Gamma7;
    if (s == "gamma5") return GammaVariant::Gamma5;
    if (s == "gamma3") return GammaVariant::Gamma3;
    throw DomainError("unknown gamma variant '" + s + "'");
}

BlockStructure structure_of(GammaVariant v) {
    switch (v) {
        case GammaVariant::Gamma7: return BlockStructure::three_scalar();
        case GammaVariant::Gamma5: return BlockStructure::one_two();
        case GammaVariant::Gamma3: return BlockStructure::two_scalar();
    }
    return {};
}

void GammaPoint::validate() const {
    if (static_cast<int>(x.size()) != coordinate_count(variant)) {
        std::ostringstream os;
        os << variant_name(variant) << " point needs " << coordinate_count(variant)
           << " coordinates, got " << x.size();
        throw DimensionError(os.str());
    }
    for (const auto& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw DomainError("gamma point has non-finite coordinates");
        }
    }
}

double rho_structured(const CMatrix& a, const BlockStructure& e,
                      const std::vector<Complex>& phases) {
    if (static_cast<int>(phases.size()) != e.s()) {
        throw DimensionError("rho_structured: phase count does not match block count");
    }
    CMatrix d = CMatrix::Zero(e.n, e.n);
    int k = 0;
    for (int b = 0; b < e.s(); ++b) {
        for (int i = 0; i < e.r[b]; ++i, ++k) d(k, k) = phases[b];
    }
    Eigen::ComplexEigenSolver<CMatrix> es(a * d, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

double mu(const CMatrix& a, const BlockStructure& e, const MuOptions& opts) {
    e.validate();
    if (a.rows() != e.n || a.cols() != e.n) {
        std::ostringstream os;
        os << "mu: matrix is " << a.rows() << "x" << a.cols() << " but structure "
           << e.name() << " needs " << e.n << "x" << e.n;
        throw DimensionError(os.str());
    }
    if (!all_finite(a)) throw DomainError("mu: non-finite matrix");
    const int g = std::max(8, opts.phase_grid);
    const double h = kTwoPi / g;
    Evaluator ev(a, e);

    if (e.s() == 2) {
        std::vector<double> vals(g);
        for (int i = 0; i < g; ++i) vals[i] = ev.rho(i * h, 0.0);
        // Refine around the three best local maxima.
        std::vector<int> peaks;
        for (int i = 0; i < g; ++i) {
            if (vals[i] >= vals[(i + g - 1) % g] && vals[i] >= vals[(i + 1) % g]) peaks.push_back(i);
        }
        std::sort(peaks.begin(), peaks.end(), [&](int x, int y) { return vals[x] > vals[y]; });
        if (peaks.empty()) peaks.push_back(0);
        double best = 0.0;
        for (std::size_t p = 0; p < std::min<std::size_t>(3, peaks.size()); ++p) {
            double arg = 0.0;
            const double c = peaks[p] * h;
            best = std::max(best, ev.rho_accurate(c, 0.0));
            best = std::max(best, golden_max([&](double t) { return ev.rho_accurate(t, 0.0); },
                                             c - h, c + h, opts.refine_iters, &arg));
        }
        return best;
    }

    std::vector<double> vals(static_cast<std::size_t>(g) * g);
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) vals[static_cast<std::size_t>(i) * g + j] = ev.rho(i * h, j * h);
    }
    std::vector<std::size_t> order(vals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t top = std::min<std::size_t>(4, order.size());
    std::partial_sort(order.begin(), order.begin() + top, order.end(),
                      [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });
    double best = 0.0;
    for (std::size_t c = 0; c < top; ++c) {
        double t2 = static_cast<double>(order[c] / g) * h;
        double t3 = static_cast<double>(order[c] % g) * h;
        double span = h;
        double cur = ev.rho_accurate(t2, t3);
        for (int round = 0; round < 6; ++round) {
            double arg = t2;
            const double f2 = golden_max([&](double t) { return ev.rho_accurate(t, t3); },
                                         t2 - span, t2 + span, opts.refine_iters / 2, &arg);
            if (f2 > cur) { cur = f2; t2 = arg; }
            arg = t3;
            const double f3 = golden_max([&](double t) { return ev.rho_accurate(t2, t); },
                                         t3 - span, t3 + span, opts.refine_iters / 2, &arg);
            if (f3 > cur) { cur = f3; t3 = arg; }
            span *= 0.5;
        }
        best = std::max(best, cur);
    }
    return best;
}

GammaPoint pi_coordinates(const CMatrix& a, GammaVariant v) {
    const int need = v == GammaVariant::Gamma3 ? 2 : 3;
    if (a.rows() != need || a.cols() != need) {
        std::ostringstream os;
        os << "pi_coordinates: " << variant_name(v) << " needs a " << need << "x" << need
           << " matrix, got " << a.rows() << "x" << a.cols();
        throw DimensionError(os.str());
    }
    GammaPoint p;
    p.variant = v;
    switch (v) {
        case GammaVariant::Gamma7:
            p.x = {a(0, 0), a(1, 1), det2(a, 0, 1), a(2, 2), det2(a, 0, 2), det2(a, 1, 2),
                   a.determinant()};
            break;
        case GammaVariant::Gamma5:
            p.x = {a(0, 0), det2(a, 0, 1) + det2(a, 0, 2), a.determinant(), a(1, 1) + a(2, 2),
                   det2(a, 1, 2)};
            break;
        case GammaVariant::Gamma3:
            p.x = {a(0, 0), a(1, 1), det2(a, 0, 1)};
            break;
    }
    return p;
}

Membership classify(const CMatrix& a, const BlockStructure& e, double tol,
                    const MuOptions& opts) {
    Membership m;
    m.mu = mu(a, e, opts);
    m.member = m.mu <= 1.0 + tol;
    m.strict = m.mu < 1.0 - tol;
    m.near_boundary = std::abs(m.mu - 1.0) <= tol;
    return m;
}

bool in_gamma(const CMatrix& a, const BlockStructure& e, double tol, const MuOptions& opts) {
    return classify(a, e, tol, opts).member;
}

double tetrablock_margin(Complex x1, Complex x2, Complex x3) {
    const double lhs = std::abs(x1 - std::conj(x2) * x3) + std::abs(x2 - std::conj(x1) * x3);
    const double rhs = 1.0 - std::norm(x3);
    return std::min(rhs - lhs, 1.0 - std::abs(x3));
}

bool tetrablock_member(const GammaPoint& x, double tol) {
    if (x.variant != GammaVariant::Gamma3) {
        throw DimensionError("tetrablock_member: expects a gamma3 point");
    }
    x.validate();
    return tetrablock_margin(x[0], x[1], x[2]) >= -tol;
}

}  // namespace gammamaps
