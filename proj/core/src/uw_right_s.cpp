#include "gammamaps/uw_right_s.hpp"

#include <cmath>
#include <sstream>

#include "gammamaps/errors.hpp"

namespace gammamaps {

RankOneFactor rank1_factor(const SampledKernel& n, double tol, std::size_t anchor) {
    RankOneFactor out;
    const auto size = n.gram.rows();
    out.values = CVector::Zero(size);
    out.anchor = 0;
    if (size == 0) return out;
    const double scale = n.gram.cwiseAbs().maxCoeff();
    if (scale <= 1e-14) return out;
    const GramFactor gf = gram_factor_full(n.gram, tol);
    if (gf.rank >= 2) {
        std::ostringstream os;
        os << "rank1_factor: kernel has numerical rank " << gf.rank;
        throw RankError(os.str());
    }
    if (gf.rank == 0) return out;
    CVector v = gf.factor.col(0);
    if (anchor == kFirstNonzero) {
        const double vmax = v.cwiseAbs().maxCoeff();
        anchor = 0;
        while (anchor + 1 < static_cast<std::size_t>(size) &&
               std::abs(v(static_cast<Eigen::Index>(anchor))) <= 1e-8 * vmax) {
            ++anchor;
        }
    }
    if (anchor >= static_cast<std::size_t>(size)) throw DomainError("rank1_factor: anchor out of range");
    v *= std::conj(unit_phase(v(static_cast<Eigen::Index>(anchor))));
    v(static_cast<Eigen::Index>(anchor)) = std::abs(v(static_cast<Eigen::Index>(anchor)));
    const double err = (v * v.adjoint() - n.gram).cwiseAbs().maxCoeff();
    if (err > std::max(tol, 1e-12) * std::max(1.0, scale) * 10.0) {
        std::ostringstream os;
        os << "rank1_factor: reconstruction error " << err;
        throw ConsistencyError(os.str());
    }
    out.values = v;
    out.anchor = anchor;
    return out;
}

UWResult uw_construct(const KernelTriple& triple, const UWOptions& opts) {
    triple.validate();
    const SampleGrid& grid = *triple.grid();
    const auto n = static_cast<Eigen::Index>(grid.size());
    const int r1 = kernel_rank(triple.n1, opts.rank_tol);
    const int r2 = kernel_rank(triple.n2, opts.rank_tol);
    if (r1 != 1 || r2 != 1) {
        std::ostringstream os;
        os << "uw_construct: needs N1 and N2 of rank 1, got ranks " << r1 << " and " << r2;
        throw RankError(os.str());
    }
    const SampledKernel k = combine_k(triple);
    const int rk = kernel_rank(k, opts.rank_tol);
    if (rk > 1) {
        std::ostringstream os;
        os << "uw_construct: combined kernel has rank " << rk << ", expected 1";
        throw RankError(os.str());
    }

    UWResult res;
    res.f1 = rank1_factor(triple.n1, opts.rank_tol, opts.anchor);
    res.f2 = rank1_factor(triple.n2, opts.rank_tol, opts.anchor);
    res.g = rank1_factor(k, opts.rank_tol, opts.anchor);

    const GramFactor state = gram_factor_full(triple.n3.gram, opts.state_tol, opts.state_tol);
    const int m = state.rank;
    res.state_dim = m;

    CMatrix right(3 + m, n), left(3 + m, n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const GridPoint& p = grid.points[t];
        const CVector v = state.factor.row(t).transpose();
        right(0, t) = 1.0;
        right(1, t) = p.z1 * res.f1.values(t);
        right(2, t) = p.z2 * res.f2.values(t);
        right.block(3, t, m, 1) = p.lambda * v;
        left(0, t) = res.g.values(t);
        left(1, t) = res.f1.values(t);
        left(2, t) = res.f2.values(t);
        left.block(3, t, m, 1) = v;
    }
    double resid = 0.0;
    const CMatrix vmat = lurking_isometry(right, left, 1e-10, &resid);
    res.gram_residual = resid;
    if (resid > opts.tol) {
        std::ostringstream os;
        os << "uw_construct: right/left Gram mismatch " << resid << " exceeds tol " << opts.tol
           << " (triple is not consistent)";
        throw ConsistencyError(os.str());
    }
    res.xi = RealizedSchurFunction::from_colligation(vmat, 3);
    return res;
}

UWReport verify_uw(const UWResult& result, const SampleGrid& grid, double tol) {
    UWReport rep;
    const auto n = static_cast<Eigen::Index>(grid.size());
    if (result.f1.values.size() != n || result.f2.values.size() != n ||
        result.g.values.size() != n) {
        throw DimensionError("verify_uw: factor length does not match the grid");
    }
    for (Eigen::Index t = 0; t < n; ++t) {
        const GridPoint& p = grid.points[t];
        const CMatrix xi = result.xi.evaluate(p.lambda);
        const Eigen::Vector3cd x(1.0, p.z1 * result.f1.values(t), p.z2 * result.f2.values(t));
        const Eigen::Vector3cd y(result.g.values(t), result.f1.values(t), result.f2.values(t));
        rep.residual = std::max(rep.residual, (xi * x - y).norm());
    }
    rep.pass = rep.residual <= tol;
    return rep;
}

TorusFit fit_torus(const RealizedSchurFunction& target, const RealizedSchurFunction& source,
                   const std::vector<Complex>& lambdas) {
    if (target.k() != 3 || source.k() != 3) throw DimensionError("fit_torus: expects k = 3");
    TorusFit fit;
    std::vector<CMatrix> ft, fs;
    for (Complex lam : lambdas) {
        ft.push_back(target.evaluate(lam));
        fs.push_back(source.evaluate(lam));
    }
    for (int i = 0; i < 3; ++i) {
        Complex acc(0.0);
        for (std::size_t j = 0; j < lambdas.size(); ++j) acc += std::conj(fs[j](i, 0)) * ft[j](i, 0);
        fit.eta[i] = unit_phase(acc);
    }
    const Eigen::Vector3cd left(fit.eta[0], fit.eta[1], fit.eta[2]);
    const Eigen::Vector3cd right(1.0, std::conj(fit.eta[1]), std::conj(fit.eta[2]));
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        const CMatrix moved = left.asDiagonal() * fs[j] * right.asDiagonal();
        fit.residual = std::max(fit.residual, (moved - ft[j]).cwiseAbs().maxCoeff());
    }
    return fit;
}

RankOneFactor right_s(const KernelTriple& triple, double tol, double rank_tol) {
    const SampledKernel k = combine_k(triple);
    const int rk = kernel_rank(k, rank_tol);
    if (rk > 1) {
        std::ostringstream os;
        os << "right_s: combined kernel has rank " << rk << ", expected at most 1";
        throw RankError(os.str());
    }
    RankOneFactor f = rank1_factor(k, rank_tol);
    const double top = f.values.size() ? f.values.cwiseAbs().maxCoeff() : 0.0;
    if (top > 1.0 + tol) {
        std::ostringstream os;
        os << "right_s: factor modulus " << top << " exceeds 1";
        throw DomainError(os.str());
    }
    return f;
}

}  // namespace gammamaps
