#pragma once

#include <array>
#include <vector>

#include "gammamaps/numerics.hpp"
#include "gammamaps/schur_realization.hpp"

namespace gammamaps {

inline constexpr double kSingularDetC = 1e-12;

/// Ingredients of the linear-fractional value at diag(z1, z2).
/// Canonical argument order throughout the library is (lambda, z1, z2).
struct SEEvaluation {
    Complex value;                 // the linear-fractional value; SE is its negative
    std::array<Complex, 2> gamma;  // (I - B diag(z1,z2))^{-1} (F21, F31)
    std::array<Complex, 3> eta;    // (1, z1 gamma1, z2 gamma2)
    Complex detC;
    CMatrix f;                     // F(lambda)
};

/// Evaluation from an already computed 3x3 value F(lambda).
SEEvaluation se_eval_matrix(const CMatrix& f_lambda, Complex z1, Complex z2);
SEEvaluation se_eval(const RealizedSchurFunction& f, Complex lambda, Complex z1, Complex z2);

/// Closed-form gamma entries (cofactor expressions); used as a consistency anchor.
std::array<Complex, 2> gamma_closed_form(const CMatrix& f_lambda, Complex z1, Complex z2);

/// SE(F)(z, z, lambda).
Complex se_diag(const RealizedSchurFunction& f, Complex lambda, Complex z);
/// SE(F)(z1, z2, lambda) = -value.
Complex se_value(const RealizedSchurFunction& f, Complex lambda, Complex z1, Complex z2);

/// Tetrablock test of (F22, F33, det of lower 2x2 block) at every lambda.
bool se_well_defined(const RealizedSchurFunction& f, const std::vector<Complex>& lambdas,
                     double tol = 1e-9);

}  // namespace gammamaps
