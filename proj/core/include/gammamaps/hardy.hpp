#pragma once

#include <string>
#include <vector>

#include "gammamaps/numerics.hpp"

namespace gammamaps {

/// Coefficients in ascending degree.
using Polynomial = std::vector<Complex>;

Complex poly_eval(const Polynomial& p, Complex x);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, Complex s);
/// Drops leading coefficients below rel_tol * max |coefficient|.
Polynomial poly_trim(const Polynomial& a, double rel_tol = 1e-12);
int poly_degree(const Polynomial& a);
bool poly_is_zero(const Polynomial& a, double abs_tol = 0.0);

/// Roots from companion-matrix eigenvalues, each polished by Newton steps.
std::vector<Complex> roots(const Polynomial& p);

/// Coefficients of the polynomial of degree < n taking `values` at the n-th roots of unity.
Polynomial interpolate_roots_of_unity(const std::vector<Complex>& values);

struct RationalFunction {
    Polynomial num{Complex(0.0)};
    Polynomial den{Complex(1.0)};

    Complex operator()(Complex x) const;
    /// Throws DomainError if the denominator has a root in the closed disc (slack 1e-9).
    void validate() const;
    bool is_zero(double abs_tol = 0.0) const { return poly_is_zero(num, abs_tol); }

    static RationalFunction constant(Complex c) { return {{c}, {Complex(1.0)}}; }
};

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);

/// c * prod (|a|/a)(a - x)/(1 - conj(a) x), with the factor for a = 0 taken as x.
Complex blaschke_eval(const std::vector<Complex>& zeros, Complex constant, Complex x);

struct InnerOuterPair {
    Complex constant{1.0, 0.0};
    std::vector<Complex> zeros;      // Blaschke zeros, |a| < 1
    std::vector<Complex> boundary_zeros;  // roots on T, carried by the outer factor as (1 - conj(r) x)
    std::vector<double> log_modulus; // log|f| at w_k = exp(2 pi i k / N), boundary factors divided out
    std::vector<double> conjugate;   // discrete conjugate function of log_modulus
    std::vector<std::string> warnings;
    double reconstruction_error = 0.0;

    int n_boundary() const { return static_cast<int>(log_modulus.size()); }
    Complex boundary_point(int k) const;

    Complex inner(Complex x) const { return blaschke_eval(zeros, constant, x); }
    /// log of the outer factor via trapezoidal Herglotz quadrature.
    Complex log_outer(Complex x) const;
    Complex outer(Complex x) const;
    Complex outer_sqrt(Complex x) const;
    Complex operator()(Complex x) const { return inner(x) * outer(x); }

    /// Boundary values exp((u + i u~)/2) of the outer square root at w_k.
    Complex outer_sqrt_boundary(int k) const;
};

struct InnerOuterOptions {
    int n_boundary = 2048;
    double tol = 1e-9;           // reconstruction target on interior test points
    int max_boundary = 65536;    // doubling stops here
};

/// Inner-outer factorization of a rational function bounded on the closed disc.
InnerOuterPair inner_outer(const RationalFunction& f, const InnerOuterOptions& opts = {});

Complex outer_sqrt_eval(const InnerOuterPair& pair, Complex x);

}  // namespace gammamaps
