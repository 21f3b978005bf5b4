#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gammamaps/hardy.hpp"
#include "gammamaps/mu_gamma.hpp"
#include "gammamaps/schur_realization.hpp"

namespace gammamaps {

// ---------------------------------------------------------------- Pick problems

struct PickData {
    std::vector<Complex> nodes;
    std::vector<CMatrix> targets;

    int k() const { return targets.empty() ? 0 : static_cast<int>(targets[0].rows()); }
    void validate() const;
};

/// Block (i,j) = (I - W_i^* W_j) / (1 - conj(l_i) l_j).
CMatrix pick_matrix(const PickData& data);

struct PickCheck {
    bool solvable = false;
    double min_eig = 0.0;
};

PickCheck pick_check(const PickData& data, double tol = 1e-9);

/// Interpolant by a lurking isometry on the Pick Gram factor. Throws
/// UnsolvableError when the Pick matrix is indefinite beyond tol.
RealizedSchurFunction np_solve(const PickData& data, double tol = 1e-9);

/// max_j ||F(l_j) - W_j||.
double np_residual(const RealizedSchurFunction& f, const PickData& data);

// ---------------------------------------------------------------- Gamma curves

/// Either interpolation data (nodes with points) or a rational curve whose
/// coordinates share one denominator: x_i = numerators[i] / denominator.
struct GammaCurveData {
    GammaVariant variant = GammaVariant::Gamma7;
    std::vector<Complex> nodes;
    std::vector<GammaPoint> points;
    std::vector<Polynomial> numerators;
    Polynomial denominator{Complex(1.0)};

    bool is_rational() const { return !numerators.empty(); }
    void validate() const;
    GammaPoint at(Complex lambda) const;
    RationalFunction component(int i) const;
    /// Node form from sampling a rational curve.
    GammaCurveData sampled(const std::vector<Complex>& at_nodes) const;
};

/// Coordinates of F(lambda) for a 3x3 realization, as a rational curve
/// (common denominator det(I - lambda S)).
GammaCurveData gamma_curve_from_realization(const RealizedSchurFunction& f, GammaVariant v);

/// Coordinates of the matrix polynomial sum_k lambda^k C_k.
GammaCurveData gamma_curve_from_matrix_polynomial(const std::vector<CMatrix>& coeffs,
                                                  GammaVariant v);

/// Gamma5 coordinates reordered as (a11, a22+a33, [12]+[13], [23], det).
std::array<Complex, 5> gamma5_transfer_order(const GammaPoint& x);

/// (x1 - x3 z2 - x5 z1 + x7 z1 z2) / (1 - x2 z2 - x4 z1 + x6 z1 z2) in storage order.
Complex psi3(const GammaPoint& x, Complex z1, Complex z2);
Complex psi3_eval(const GammaCurveData& x, Complex lambda, Complex z1, Complex z2);

/// (X1 - X3 z + X5 z^2) / (1 - X2 z + X4 z^2) in transfer order.
Complex psi_lower3(const GammaPoint& x, Complex z);
Complex psi_lower3_eval(const GammaCurveData& x, Complex lambda, Complex z);

/// How the Gamma5 slice entries are formed.
///   Printed:   det slice (X3 - 2zX5)/(1 - X2 z); node-reduction second entry (X2 - 2zX3)/(2 - zX2)
///   Corrected: every denominator 2 - zX2; second entry (X2 - 2zX4)/(2 - zX2)
enum class Gamma5Formulas { Printed, Corrected };

std::string formulas_name(Gamma5Formulas f);
Gamma5Formulas parse_formulas(const std::string& s);

/// Slice triple (first diagonal entry, second diagonal entry, determinant) at a single point.
std::array<Complex, 3> slice_point(const GammaPoint& x, Complex z,
                                   Gamma5Formulas formulas = Gamma5Formulas::Printed);

/// Same triple as rational functions of lambda.
std::array<RationalFunction, 3> slice_coordinates(const GammaCurveData& x, Complex z,
                                                  Gamma5Formulas formulas = Gamma5Formulas::Printed);

// ---------------------------------------------------------------- 2x2 slices

struct SliceOptions {
    int n_boundary = 2048;
    double tol = 1e-6;               // norm and determinant checks
    double factor_tol = 1e-9;        // inner-outer reconstruction target
    int check_radii = 6;
    int check_angles = 24;
    Gamma5Formulas formulas = Gamma5Formulas::Printed;
};

/// [[f11, inner * sqrt(outer)], [sqrt(outer), f22]], or diag(f11, f22) when
/// f11 f22 - det vanishes identically.
struct SlicedSchur2x2 {
    Complex z{0.0, 0.0};
    GammaVariant variant = GammaVariant::Gamma7;
    RationalFunction f11, f22, det;
    bool triangular = false;
    InnerOuterPair offdiag;
    double max_norm = 0.0;
    double det_error = 0.0;

    CMatrix evaluate(Complex lambda) const;
    Complex f12(Complex lambda) const;
    Complex f21(Complex lambda) const;
    /// f11 + f12 f21 w / (1 - f22 w).
    Complex transfer(Complex lambda, Complex w) const;
    /// (|F12|, |F21|) at the k-th boundary sample.
    std::pair<double, double> boundary_moduli(int k) const;
};

SlicedSchur2x2 build_slice_schur(const GammaCurveData& x, Complex z, const SliceOptions& opts = {});

// ---------------------------------------------------------------- reductions

struct SplitRule {
    enum class Kind { Balanced, LeftOne, User };
    Kind kind = Kind::Balanced;
    std::vector<std::pair<Complex, Complex>> pairs;

    static SplitRule balanced() { return {Kind::Balanced, {}}; }
    static SplitRule left_one() { return {Kind::LeftOne, {}}; }
    static SplitRule user(std::vector<std::pair<Complex, Complex>> p) { return {Kind::User, std::move(p)}; }
    std::string name() const;
};

SplitRule parse_split(const std::string& s);

/// (b, c) with b c = product according to the rule; index selects the user pair.
std::pair<Complex, Complex> split_product(Complex product, const SplitRule& rule, std::size_t index);

/// 2x2 Pick data lambda_j -> [[s1, b], [c, s2]] with b c = s1 s2 - s3. For Gamma7
/// the first diagonal entry is (x4 - z x6)/(1 - z x2) and the second (x1 - z x3)/(1 - z x2).
PickData reduce_gamma7(const GammaCurveData& data, Complex z2, const SplitRule& rule);
PickData reduce_gamma5(const GammaCurveData& data, Complex z, const SplitRule& rule,
                       Gamma5Formulas formulas = Gamma5Formulas::Printed);

struct CertifyCell {
    Complex z;
    std::string split;
    bool solvable = false;
    double min_eig = 0.0;
    double residual = -1.0;  // np_solve residual when solvable
    int state_dim = 0;
};

struct CertifyReport {
    std::vector<CertifyCell> cells;
    /// Split rules that are solvable at every z in the grid.
    std::vector<std::string> fully_solvable_splits;
    bool solvable() const { return !fully_solvable_splits.empty(); }
    bool unsolvable_everywhere() const;
};

std::vector<Complex> default_z_grid();

CertifyReport certify_gamma7_interpolation(const GammaCurveData& data,
                                           const std::vector<Complex>& z2_grid,
                                           const std::vector<SplitRule>& rules, double tol = 1e-9);
CertifyReport certify_gamma5_interpolation(const GammaCurveData& data,
                                           const std::vector<Complex>& z_grid,
                                           const std::vector<SplitRule>& rules, double tol = 1e-9,
                                           Gamma5Formulas formulas = Gamma5Formulas::Printed);

}  // namespace gammamaps
