#include "gammamaps/fractional_se.hpp"

#include <sstream>

#include "gammamaps/errors.hpp"
#include "gammamaps/mu_gamma.hpp"

namespace gammamaps {

namespace {

void require_three(const CMatrix& f) {
    if (f.rows() != 3 || f.cols() != 3) {
        throw DimensionError("the SE map needs a 3x3 matrix-valued function");
    }
}

}  // namespace

SEEvaluation se_eval_matrix(const CMatrix& f, Complex z1, Complex z2) {
    require_three(f);
    SEEvaluation out;
    out.f = f;
    const Complex c11 = 1.0 - f(1, 1) * z1, c12 = -f(1, 2) * z2;
    const Complex c21 = -f(2, 1) * z1, c22 = 1.0 - f(2, 2) * z2;
    out.detC = c11 * c22 - c12 * c21;
    if (std::abs(out.detC) < kSingularDetC) {
        std::ostringstream os;
        os << "det C = " << out.detC << " is numerically zero at z = (" << z1 << ", " << z2 << ")";
        throw SingularityError(os.str());
    }
    Eigen::Matrix2cd c;
    c << c11, c12, c21, c22;
    const Eigen::Vector2cd rhs(f(1, 0), f(2, 0));
    const Eigen::Vector2cd g = c.partialPivLu().solve(rhs);
    out.gamma = {g(0), g(1)};
    out.eta = {Complex(1.0), z1 * g(0), z2 * g(1)};
    out.value = f(0, 0) + f(0, 1) * out.eta[1] + f(0, 2) * out.eta[2];
    return out;
}

SEEvaluation se_eval(const RealizedSchurFunction& f, Complex lambda, Complex z1, Complex z2) {
    if (f.k() != 3) throw DimensionError("se_eval: expects k = 3");
    return se_eval_matrix(f.evaluate(lambda), z1, z2);
}

std::array<Complex, 2> gamma_closed_form(const CMatrix& f, Complex z1, Complex z2) {
    require_three(f);
    const Complex det = (1.0 - f(1, 1) * z1) * (1.0 - f(2, 2) * z2) - f(1, 2) * z2 * f(2, 1) * z1;
    const Complex g1 = ((1.0 - f(2, 2) * z2) * f(1, 0) + z2 * f(1, 2) * f(2, 0)) / det;
    const Complex g2 = ((1.0 - f(1, 1) * z1) * f(2, 0) + z1 * f(2, 1) * f(1, 0)) / det;
    return {g1, g2};
}

Complex se_value(const RealizedSchurFunction& f, Complex lambda, Complex z1, Complex z2) {
    return -se_eval(f, lambda, z1, z2).value;
}

Complex se_diag(const RealizedSchurFunction& f, Complex lambda, Complex z) {
    return se_value(f, lambda, z, z);
}

bool se_well_defined(const RealizedSchurFunction& f, const std::vector<Complex>& lambdas,
                     double tol) {
    if (f.k() != 3) throw DimensionError("se_well_defined: expects k = 3");
    for (Complex lam : lambdas) {
        const CMatrix v = f.evaluate(lam);
        GammaPoint p;
        p.variant = GammaVariant::Gamma3;
        p.x = {v(1, 1), v(2, 2), v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1)};
        if (!tetrablock_member(p, tol)) return false;
    }
    return true;
}

}  // namespace gammamaps
