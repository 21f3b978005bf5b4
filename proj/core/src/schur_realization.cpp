#include "gammamaps/schur_realization.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "gammamaps/errors.hpp"

namespace gammamaps {

RealizedSchurFunction::RealizedSchurFunction(CMatrix p, CMatrix q, CMatrix r, CMatrix s)
    : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), s_(std::move(s)) {
    const auto k = p_.rows();
    const auto m = s_.rows();
    if (p_.cols() != k || q_.rows() != k || q_.cols() != m || r_.rows() != m ||
        r_.cols() != k || s_.cols() != m) {
        std::ostringstream os;
        os << "colligation blocks have inconsistent sizes: P " << p_.rows() << "x" << p_.cols()
           << ", Q " << q_.rows() << "x" << q_.cols() << ", R " << r_.rows() << "x"
           << r_.cols() << ", S " << s_.rows() << "x" << s_.cols();
        throw DimensionError(os.str());
    }
    const CMatrix v = colligation();
    if (!all_finite(v)) throw DomainError("colligation has non-finite entries");
    const double nv = operator_norm(v);
    if (nv > 1.0 + kColligationTol) {
        std::ostringstream os;
        os << "colligation is not contractive (norm " << nv << ")";
        throw DomainError(os.str());
    }
}

RealizedSchurFunction RealizedSchurFunction::from_colligation(const CMatrix& v, int k) {
    if (v.rows() != v.cols() || k < 0 || k > v.rows()) {
        throw DimensionError("from_colligation: need a square matrix with k <= size");
    }
    const int m = static_cast<int>(v.rows()) - k;
    return RealizedSchurFunction(v.topLeftCorner(k, k), v.topRightCorner(k, m),
                                 v.bottomLeftCorner(m, k), v.bottomRightCorner(m, m));
}

RealizedSchurFunction RealizedSchurFunction::constant(const CMatrix& c) {
    const auto k = c.rows();
    return RealizedSchurFunction(c, CMatrix(k, 0), CMatrix(0, k), CMatrix(0, 0));
}

CMatrix RealizedSchurFunction::colligation() const {
    const auto k = p_.rows(), m = s_.rows();
    CMatrix v(k + m, k + m);
    v.topLeftCorner(k, k) = p_;
    v.topRightCorner(k, m) = q_;
    v.bottomLeftCorner(m, k) = r_;
    v.bottomRightCorner(m, m) = s_;
    return v;
}

CMatrix RealizedSchurFunction::evaluate(Complex lambda) const {
    if (!(std::abs(lambda) < 1.0)) {
        std::ostringstream os;
        os << "evaluate: |lambda| = " << std::abs(lambda) << " is not inside the unit disc";
        throw DomainError(os.str());
    }
    if (m() == 0) return p_;
    const CMatrix a = CMatrix::Identity(m(), m()) - lambda * s_;
    Eigen::PartialPivLU<CMatrix> lu(a);
    const double rc = std::abs(lu.determinant());
    if (!(rc > 1e-300)) throw SingularityError("evaluate: I - lambda S is singular");
    const CMatrix x = lu.solve(r_);
    CMatrix out = p_ + lambda * (q_ * x);
    if (!all_finite(out)) throw NumericalError("evaluate: non-finite result");
    return out;
}

RealizedSchurFunction random_schur(int k, int m, std::uint64_t seed, double bound) {
    if (k < 0 || m < 0) throw DimensionError("random_schur: negative size");
    if (!(bound > 0.0 && bound <= 1.0)) throw DomainError("random_schur: bound must lie in (0,1]");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int n = k + m;
    CMatrix g(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) g(i, j) = Complex(nd(rng), nd(rng));
    }
    if (n == 0) return RealizedSchurFunction(g, CMatrix(0, 0), CMatrix(0, 0), CMatrix(0, 0));
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd s = svd.singularValues();
    const double top = s(0);
    for (int i = 0; i < s.size(); ++i) s(i) = bound * s(i) / top;
    const CMatrix v = svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
    return RealizedSchurFunction::from_colligation(v, k);
}

SchurReport verify_schur(const RealizedSchurFunction& f, int grid_size, double tol) {
    SchurReport rep;
    const int nr = std::max(1, grid_size);
    const int na = 4 * nr;
    const double rmax = 1.0 - 1e-3;
    for (int i = 1; i <= nr; ++i) {
        const double rad = rmax * static_cast<double>(i) / nr;
        for (int j = 0; j < na; ++j) {
            const double t = 2.0 * std::numbers::pi * j / na;
            const Complex lam = std::polar(rad, t);
            const double nv = operator_norm(f.evaluate(lam));
            if (nv > rep.max_norm) {
                rep.max_norm = nv;
                rep.argmax = lam;
            }
        }
    }
    rep.pass = rep.max_norm <= 1.0 + tol;
    return rep;
}

RealizedSchurFunction torus_conjugate(const RealizedSchurFunction& f, Complex e1, Complex e2,
                                      Complex e3) {
    if (f.k() != 3) throw DimensionError("torus_conjugate: expects k = 3");
    for (Complex e : {e1, e2, e3}) {
        if (std::abs(std::abs(e) - 1.0) > 1e-12) {
            throw DomainError("torus_conjugate: parameters must be unimodular");
        }
    }
    Eigen::Vector3cd left(e1, e2, e3);
    Eigen::Vector3cd right(1.0, std::conj(e2), std::conj(e3));
    const CMatrix p = left.asDiagonal() * f.P() * right.asDiagonal();
    const CMatrix q = left.asDiagonal() * f.Q();
    const CMatrix r = f.R() * right.asDiagonal();
    return RealizedSchurFunction(p, q, r, f.S());
}

}  // namespace gammamaps
