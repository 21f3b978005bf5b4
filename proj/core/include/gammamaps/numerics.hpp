#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gammamaps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kDefaultRankTol = 1e-9;

/// Largest singular value.
double operator_norm(const CMatrix& m);

/// (M + M*) / 2
CMatrix hermitian_part(const CMatrix& m);

bool all_finite(const CMatrix& m);

/// Smallest eigenvalue of the hermitian part. Throws if M is not hermitian
/// within tol (relative to max(1, |M|)).
double min_eigenvalue(const CMatrix& m, double tol);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const CMatrix& m, double tol);

struct GramFactor {
    CMatrix factor;  // n x r, G ~= factor * factor^*
    int rank = 0;
    double min_eig = 0.0;
    double max_eig = 0.0;
};

/// Rank-revealing factorization G = L L^*. Eigenvalues > max(tol * max, abs_floor)
/// are kept; eigenvalues below -tol * max(1, max_eig) throw IndefiniteError.
GramFactor gram_factor_full(const CMatrix& g, double tol = kDefaultRankTol, double abs_floor = 0.0);
CMatrix gram_factor(const CMatrix& g, double tol = kDefaultRankTol);

int numerical_rank(const CMatrix& g, double tol = kDefaultRankTol);

/// Solve for the contraction V with V * right.col(t) = left.col(t) for all t,
/// given that right^* right == left^* left. V maps span(right) isometrically
/// onto span(left) and is zero on the orthocomplement of span(right).
/// Singular values of `right` below sv_tol * largest are treated as zero.
/// Returns the isometry-consistency residual through `gram_residual`.
CMatrix lurking_isometry(const CMatrix& right, const CMatrix& left,
                         double sv_tol = 1e-10, double* gram_residual = nullptr);

/// Nearest unimodular number to z (1 if z == 0).
Complex unit_phase(Complex z);

CMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

}  // namespace gammamaps
