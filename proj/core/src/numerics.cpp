#include "gammamaps/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gammamaps/errors.hpp"

namespace gammamaps {

double operator_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

CMatrix hermitian_part(const CMatrix& m) {
    return (m + m.adjoint()) * 0.5;
}

bool all_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const Complex v = m.data()[i];
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

namespace {

void require_square(const CMatrix& m, const char* who) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << who << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

void require_hermitian(const CMatrix& m, double tol, const char* who) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (skew > std::max(tol, 1e-12) * scale) {
        std::ostringstream os;
        os << who << ": matrix is not hermitian (skew " << skew << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

double min_eigenvalue(const CMatrix& m, double tol) {
    require_square(m, "min_eigenvalue");
    if (m.size() == 0) return 0.0;
    if (!all_finite(m)) throw NumericalError("min_eigenvalue: non-finite entries");
    require_hermitian(m, tol, "min_eigenvalue");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool is_psd(const CMatrix& m, double tol) {
    return min_eigenvalue(m, tol) >= -tol;
}

GramFactor gram_factor_full(const CMatrix& g, double tol, double abs_floor) {
    require_square(g, "gram_factor");
    GramFactor out;
    const Eigen::Index n = g.rows();
    if (n == 0) {
        out.factor = CMatrix(0, 0);
        return out;
    }
    if (!all_finite(g)) throw NumericalError("gram_factor: non-finite entries");
    require_hermitian(g, std::max(tol, 1e-10), "gram_factor");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(g));
    const Eigen::VectorXd& ev = es.eigenvalues();
    out.min_eig = ev(0);
    out.max_eig = ev(n - 1);
    const double scale = std::max(out.max_eig, 0.0);
    if (out.min_eig < -tol * std::max(1.0, scale)) {
        std::ostringstream os;
        os << "gram_factor: matrix is indefinite (min eigenvalue " << out.min_eig << ")";
        throw IndefiniteError(os.str());
    }
    const double cut = std::max(tol * scale, abs_floor);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        if (ev(i) > cut && ev(i) > 0.0) keep.push_back(i);
    }
    out.rank = static_cast<int>(keep.size());
    out.factor = CMatrix::Zero(n, out.rank);
    for (int c = 0; c < out.rank; ++c) {
        out.factor.col(c) = es.eigenvectors().col(keep[c]) * std::sqrt(ev(keep[c]));
    }
    return out;
}

CMatrix gram_factor(const CMatrix& g, double tol) {
    return gram_factor_full(g, tol).factor;
}

int numerical_rank(const CMatrix& g, double tol) {
    return gram_factor_full(g, tol).rank;
}

CMatrix lurking_isometry(const CMatrix& right, const CMatrix& left,
                         double sv_tol, double* gram_residual) {
    if (right.cols() != left.cols()) {
        throw DimensionError("lurking_isometry: right and left need the same column count");
    }
    const Eigen::Index n_in = right.rows();
    const Eigen::Index n_out = left.rows();
    const CMatrix gr = right.adjoint() * right;
    const CMatrix gl = left.adjoint() * left;
    if (gram_residual) {
        const double scale = std::max(1.0, gr.cwiseAbs().maxCoeff());
        *gram_residual = (gr - gl).cwiseAbs().maxCoeff() / scale;
    }
    CMatrix v = CMatrix::Zero(n_out, n_in);
    if (right.cols() == 0 || n_in == 0) return v;

    Eigen::JacobiSVD<CMatrix> svd(right, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return v;
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > sv_tol * s(0)) ++r;
    if (r == 0) return v;

    const CMatrix u_r = svd.matrixU().leftCols(r);
    const CMatrix w_r = svd.matrixV().leftCols(r);
    CMatrix image = left * w_r;
    for (Eigen::Index c = 0; c < r; ++c) image.col(c) /= s(c);
    // Polar part removes the small Gram mismatch so V is exactly partial isometric.
    Eigen::JacobiSVD<CMatrix> psvd(image, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CMatrix polar = psvd.matrixU() * psvd.matrixV().adjoint();
    v = polar * u_r.adjoint();
    return v;
}

Complex unit_phase(Complex z) {
    const double a = std::abs(z);
    if (a == 0.0) return Complex(1.0, 0.0);
    return z / a;
}

CMatrix from_rows(const std::vector<std::vector<Complex>>& rows) {
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index m = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].size());
    CMatrix out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[i].size()) != m) {
            throw DimensionError("from_rows: ragged rows");
        }
        for (Eigen::Index j = 0; j < m; ++j) out(i, j) = rows[i][j];
    }
    return out;
}

}  // namespace gammamaps
