#pragma once

// Test-side reference computations, written independently of the library paths
// they check.

#include <array>
#include <functional>
#include <vector>

#include "gammamaps/numerics.hpp"

namespace gmtest {

using gammamaps::CMatrix;
using gammamaps::Complex;

/// Largest singular value of a 2x2 matrix from the closed form
/// s^2 = (|A|_F^2 + sqrt(|A|_F^4 - 4 |det A|^2)) / 2.
double svd2_max(const CMatrix& a);

/// 1 / min{ max|x_i| : det(I - A diag(x1,x2,x3)) = 0 } by solving for x1 on a
/// polar grid over (x2, x3) and polishing with restarted Nelder-Mead.
double mu_direct_three_scalar(const CMatrix& a);

/// Same for diag(x1, x2, x2).
double mu_direct_one_two(const CMatrix& a);

/// Closed tetrablock by definition: 1 - x1 z1 - x2 z2 + x3 z1 z2 has no zero in
/// the open bidisc. Returns the smallest max(|z1|,|z2|) over zeros found by a
/// search over z2 (>= 1 means member).
double tetrablock_zero_radius(Complex x1, Complex x2, Complex x3);

/// a11 + a12 X (I - A22 X)^{-1} a21 for 3x3 A and 2x2 X using the explicit 2x2 inverse.
Complex lft_value(const CMatrix& a, const CMatrix& x);

/// (I - B Z)^{-1} (F21, F31) through Cramer's rule.
std::array<Complex, 2> gamma_cramer(const CMatrix& f, Complex z1, Complex z2);

/// |df/dx + i df/dy| by central differences (zero for analytic f).
double cauchy_riemann_residual(const std::function<Complex(Complex)>& f, Complex at, double h);

/// Outer factor of num/den by reflecting the roots of num that lie inside the
/// disc, normalized so the value at 0 is positive.
Complex reflected_outer(const std::vector<Complex>& num_roots, Complex lead,
                        const std::function<Complex(Complex)>& den, Complex x);

/// Minimize f over R^n from x0 (Nelder-Mead, restarted).
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> x0, double step, int iters, int restarts);

}  // namespace gmtest
