#include "gammamaps/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/FFT>

#include "gammamaps/errors.hpp"

namespace gammamaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitSlack = 1e-9;

Complex unit_root(int k, int n) { return std::polar(1.0, kTwoPi * k / n); }

}  // namespace

Complex poly_eval(const Polynomial& p, Complex x) {
    Complex acc(0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    Polynomial out(std::max(a.size(), b.size()), Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, poly_scale(b, -1.0));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {Complex(0.0)};
    Polynomial out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

Polynomial poly_scale(const Polynomial& a, Complex s) {
    Polynomial out(a);
    for (auto& c : out) c *= s;
    return out;
}

Polynomial poly_trim(const Polynomial& a, double rel_tol) {
    double top = 0.0;
    for (const auto& c : a) top = std::max(top, std::abs(c));
    Polynomial out(a);
    while (out.size() > 1 && std::abs(out.back()) <= rel_tol * top) out.pop_back();
    if (out.empty()) out.push_back(Complex(0.0));
    return out;
}

int poly_degree(const Polynomial& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        if (a[i] != Complex(0.0)) return i;
    }
    return -1;
}

bool poly_is_zero(const Polynomial& a, double abs_tol) {
    for (const auto& c : a) {
        if (std::abs(c) > abs_tol) return false;
    }
    return true;
}

std::vector<Complex> roots(const Polynomial& p_in) {
    const Polynomial p = poly_trim(p_in);
    const int deg = poly_degree(p);
    if (deg <= 0) return {};
    CMatrix comp = CMatrix::Zero(deg, deg);
    const Complex lead = p[deg];
    for (int i = 0; i < deg; ++i) comp(0, i) = -p[deg - 1 - i] / lead;
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    std::vector<Complex> out(deg);
    Polynomial dp(deg);
    for (int i = 1; i <= deg; ++i) dp[i - 1] = p[i] * static_cast<double>(i);
    for (int i = 0; i < deg; ++i) {
        Complex r = es.eigenvalues()(i);
        for (int it = 0; it < 4; ++it) {
            const Complex d = poly_eval(dp, r);
            if (std::abs(d) < 1e-300) break;
            const Complex step = poly_eval(p, r) / d;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            // Keep the polish local; multiple roots make Newton wander.
            if (std::abs(step) > 1e-3 * std::max(1.0, std::abs(r))) break;
            r -= step;
        }
        out[i] = r;
    }
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
        return std::arg(a) < std::arg(b);
    });
    return out;
}

Polynomial interpolate_roots_of_unity(const std::vector<Complex>& values) {
    const int n = static_cast<int>(values.size());
    if (n == 0) return {Complex(0.0)};
    Eigen::FFT<double> fft;
    std::vector<Complex> c;
    fft.fwd(c, values);
    for (auto& v : c) v /= static_cast<double>(n);
    return c;
}

Complex RationalFunction::operator()(Complex x) const {
    const Complex d = poly_eval(den, x);
    if (std::abs(d) == 0.0) throw SingularityError("rational function: zero denominator");
    return poly_eval(num, x) / d;
}

void RationalFunction::validate() const {
    if (poly_is_zero(den)) throw DomainError("rational function has a zero denominator");
    for (Complex r : roots(den)) {
        if (std::abs(r) <= 1.0 + kUnitSlack) {
            std::ostringstream os;
            os << "rational function has a pole at " << r << " in the closed unit disc";
            throw DomainError(os.str());
        }
    }
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {poly_mul(a.num, b.num), poly_mul(a.den, b.den)};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den == b.den) return {poly_sub(a.num, b.num), a.den};
    return {poly_sub(poly_mul(a.num, b.den), poly_mul(b.num, a.den)), poly_mul(a.den, b.den)};
}

Complex blaschke_eval(const std::vector<Complex>& zeros, Complex constant, Complex x) {
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("blaschke_eval: point outside the closed disc");
    Complex acc = constant;
    for (Complex a : zeros) {
        const double m = std::abs(a);
        if (m >= 1.0) throw DomainError("blaschke_eval: zero outside the open disc");
        if (m == 0.0) {
            acc *= x;
        } else {
            acc *= (m / a) * (a - x) / (1.0 - std::conj(a) * x);
        }
    }
    return acc;
}

Complex InnerOuterPair::boundary_point(int k) const { return unit_root(k, n_boundary()); }

Complex InnerOuterPair::log_outer(Complex x) const {
    if (!(std::abs(x) < 1.0)) throw DomainError("outer factor is evaluated inside the open disc only");
    const int n = n_boundary();
    Complex acc(0.0);
    for (int k = 0; k < n; ++k) {
        const Complex w = unit_root(k, n);
        acc += (w + x) / (w - x) * log_modulus[k];
    }
    acc /= static_cast<double>(n);
    for (Complex r : boundary_zeros) acc += std::log(1.0 - std::conj(r) * x);
    return acc;
}

Complex InnerOuterPair::outer(Complex x) const { return std::exp(log_outer(x)); }

Complex InnerOuterPair::outer_sqrt(Complex x) const { return std::exp(0.5 * log_outer(x)); }

Complex InnerOuterPair::outer_sqrt_boundary(int k) const {
    Complex v = std::exp(0.5 * Complex(log_modulus[k], conjugate[k]));
    const Complex w = boundary_point(k);
    for (Complex r : boundary_zeros) v *= std::sqrt(1.0 - std::conj(r) * w);
    return v;
}

namespace {

// Discrete conjugate function: multiply Fourier coefficient n by -i sign(n).
std::vector<double> discrete_conjugate(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    Eigen::FFT<double> fft;
    std::vector<Complex> spec;
    fft.fwd(spec, u);
    for (int j = 0; j < n; ++j) {
        if (j == 0 || 2 * j == n) {
            spec[j] = 0.0;
        } else {
            spec[j] *= Complex(0.0, 2 * j < n ? -1.0 : 1.0);
        }
    }
    std::vector<Complex> back;
    fft.inv(back, spec);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) out[k] = back[k].real();
    return out;
}

// Quotient of p by (x - r), remainder dropped.
Polynomial deflate(const Polynomial& p, Complex r) {
    if (p.size() < 2) return {Complex(0.0)};
    Polynomial q(p.size() - 1);
    Complex carry = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = p[i] + carry * r;
    }
    return q;
}

// `regular` is f with the boundary zero factors divided out.
InnerOuterPair factor_with(const RationalFunction& f, const RationalFunction& regular,
                           const std::vector<Complex>& zeros, const std::vector<Complex>& boundary,
                           std::vector<std::string> warnings, int n) {
    InnerOuterPair pair;
    pair.zeros = zeros;
    pair.boundary_zeros = boundary;
    pair.warnings = std::move(warnings);
    pair.log_modulus.resize(n);
    for (int k = 0; k < n; ++k) {
        const double m = std::abs(regular(unit_root(k, n)));
        pair.log_modulus[k] = std::log(std::max(m, 1e-300));
    }
    // Unimodular constant from a few interior points away from the zeros.
    Complex acc(0.0);
    for (int k = 0; k < 8; ++k) {
        const Complex x = std::polar(0.35, kTwoPi * (k + 0.25) / 8.0);
        const Complex b = blaschke_eval(zeros, 1.0, x) * pair.outer(x);
        const Complex v = f(x);
        acc += v * std::conj(b);
    }
    pair.constant = unit_phase(acc);
    return pair;
}

double reconstruction_error(const InnerOuterPair& pair, const RationalFunction& f) {
    double err = 0.0;
    for (double r : {0.0, 0.3, 0.6, 0.85, 0.95, 0.98}) {
        const int na = r == 0.0 ? 1 : 16;
        for (int k = 0; k < na; ++k) {
            const Complex x = std::polar(r, kTwoPi * (k + 0.5) / na);
            const Complex fx = f(x);
            err = std::max(err, std::abs(pair(x) - fx) / std::max(1.0, std::abs(fx)));
        }
    }
    return err;
}

}  // namespace

InnerOuterPair inner_outer(const RationalFunction& f_in, const InnerOuterOptions& opts) {
    RationalFunction f{poly_trim(f_in.num), poly_trim(f_in.den)};
    f.validate();
    double scale = 0.0;
    for (const auto& c : f_in.num) scale = std::max(scale, std::abs(c));
    if (poly_is_zero(f.num) || scale == 0.0) {
        throw DomainError("inner_outer: identically zero function (handle the triangular case)");
    }
    std::vector<Complex> zeros, boundary;
    std::vector<std::string> warnings;
    RationalFunction regular = f;
    for (Complex r : roots(f.num)) {
        const double m = std::abs(r);
        if (m < 1.0 - kUnitSlack) {
            zeros.push_back(m < 1e-14 ? Complex(0.0) : r);
        } else if (m <= 1.0 + kUnitSlack) {
            const Complex snapped = r / m;
            boundary.push_back(snapped);
            regular.num = deflate(regular.num, snapped);
            std::ostringstream os;
            os << "numerator root " << snapped << " lies on the unit circle; kept in the outer factor";
            warnings.push_back(os.str());
        }
    }
    int n = std::max(16, opts.n_boundary);
    InnerOuterPair pair;
    for (;;) {
        pair = factor_with(f, regular, zeros, boundary, warnings, n);
        pair.reconstruction_error = reconstruction_error(pair, f);
        if (pair.reconstruction_error <= opts.tol || n >= opts.max_boundary) break;
        n *= 2;
    }
    if (pair.reconstruction_error > std::max(opts.tol, 1e-6)) {
        std::ostringstream os;
        os << "inner_outer: reconstruction error " << pair.reconstruction_error
           << " with " << n << " boundary samples";
        throw NumericalError(os.str());
    }
    if (n != opts.n_boundary) {
        std::ostringstream os;
        os << "boundary sample count raised from " << opts.n_boundary << " to " << n;
        pair.warnings.push_back(os.str());
    }
    pair.conjugate = discrete_conjugate(pair.log_modulus);
    return pair;
}

Complex outer_sqrt_eval(const InnerOuterPair& pair, Complex x) { return pair.outer_sqrt(x); }

}  // namespace gammamaps
