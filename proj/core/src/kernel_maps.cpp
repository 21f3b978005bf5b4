#include "gammamaps/kernel_maps.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gammamaps/errors.hpp"
#include "gammamaps/fractional_se.hpp"

namespace gammamaps {

namespace {

double frac(double x) { return x - std::floor(x); }

// Area-uniform point in the disc of the given radius from two unit-interval numbers.
Complex disc_point(double u, double v, double radius) {
    return std::polar(radius * std::sqrt(u), 2.0 * std::numbers::pi * v);
}

// Plastic-number style additive recurrences for 2 and 4 dimensions.
double phi_d(int d) {
    double x = 2.0;
    for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (d + 1));
    return x;
}

}  // namespace

void SampleGrid::validate() const {
    for (std::size_t t = 0; t < points.size(); ++t) {
        const auto& p = points[t];
        if (!(std::abs(p.lambda) < 1.0 && std::abs(p.z1) < 1.0 && std::abs(p.z2) < 1.0)) {
            std::ostringstream os;
            os << "grid point " << t << " is not strictly inside the polydisc";
            throw DomainError(os.str());
        }
        if (diagonal && p.z1 != p.z2) throw DomainError("diagonal grid has z1 != z2");
    }
    for (std::size_t t = 0; t < points.size(); ++t) {
        for (std::size_t u = t + 1; u < points.size(); ++u) {
            const auto& a = points[t];
            const auto& b = points[u];
            if (a.lambda == b.lambda && a.z1 == b.z1 && a.z2 == b.z2) {
                std::ostringstream os;
                os << "grid points " << t << " and " << u << " coincide";
                throw DomainError(os.str());
            }
        }
    }
}

SampleGrid SampleGrid::tensor(int n_lambda, int n_z, std::uint64_t seed, double radius,
                              bool diagonal) {
    if (n_lambda < 0 || n_z < 0) throw DimensionError("tensor grid sizes must be nonnegative");
    if (!(radius > 0.0 && radius < 1.0)) throw DomainError("grid radius must lie in (0,1)");
    const double shift = frac(static_cast<double>(seed % 1000003) * 0.6180339887498949);
    const double g2 = phi_d(2);
    const double g4 = phi_d(4);
    std::vector<Complex> lams;
    for (int i = 0; i < n_lambda; ++i) {
        const double k = i + 1.0;
        lams.push_back(disc_point(frac(shift + k / g2), frac(0.5 * shift + k / (g2 * g2)), radius));
    }
    std::vector<std::pair<Complex, Complex>> zs;
    for (int j = 0; j < n_z; ++j) {
        const double k = j + 1.0;
        const double a1 = frac(0.3 * shift + k / g4);
        const double a2 = frac(0.7 * shift + k / (g4 * g4));
        const double a3 = frac(0.1 * shift + k / (g4 * g4 * g4));
        const double a4 = frac(0.9 * shift + k / (g4 * g4 * g4 * g4));
        const Complex z1 = disc_point(a1, a2, radius);
        zs.emplace_back(z1, diagonal ? z1 : disc_point(a3, a4, radius));
    }
    SampleGrid g;
    g.diagonal = diagonal;
    for (Complex lam : lams) {
        for (const auto& z : zs) g.points.push_back({lam, z.first, z.second});
    }
    g.validate();
    return g;
}

SampleGrid SampleGrid::with_size(int n, std::uint64_t seed, double radius, bool diagonal) {
    if (n <= 0) return SampleGrid{{}, diagonal};
    int best = 0;
    const double root = std::sqrt(static_cast<double>(n));
    for (int d = 3; d <= n; ++d) {
        if (n % d != 0) continue;
        if (best == 0 || std::abs(d - root) < std::abs(best - root)) best = d;
    }
    if (best == 0) return tensor(n, 1, seed, radius, diagonal);
    return tensor(n / best, best, seed, radius, diagonal);
}

std::vector<Complex> SampleGrid::distinct_lambdas() const {
    std::vector<Complex> out;
    for (const auto& p : points) {
        bool seen = false;
        for (Complex l : out) seen = seen || l == p.lambda;
        if (!seen) out.push_back(p.lambda);
    }
    return out;
}

void KernelTriple::validate() const {
    if (!n1.grid || n1.grid != n2.grid || n1.grid != n3.grid) {
        throw DomainError("kernel triple does not share a single grid");
    }
    const auto n = static_cast<Eigen::Index>(n1.grid->size());
    for (const auto* k : {&n1, &n2, &n3}) {
        if (k->gram.rows() != n || k->gram.cols() != n) {
            throw DimensionError("kernel gram size does not match the grid");
        }
    }
}

KernelTriple upper_e(const RealizedSchurFunction& f, const GridPtr& grid) {
    if (!grid) throw DomainError("upper_e: null grid");
    if (f.k() != 3) throw DimensionError("upper_e: expects k = 3");
    const auto n = static_cast<Eigen::Index>(grid->size());
    CVector g1(n), g2(n);
    CMatrix eta(3, n);
    std::vector<CMatrix> fv(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const auto& p = grid->points[t];
        const SEEvaluation e = se_eval(f, p.lambda, p.z1, p.z2);
        g1(t) = e.gamma[0];
        g2(t) = e.gamma[1];
        eta.col(t) << e.eta[0], e.eta[1], e.eta[2];
        fv[t] = e.f;
    }
    KernelTriple out;
    out.n1 = {grid, g1 * g1.adjoint()};
    out.n2 = {grid, g2 * g2.adjoint()};
    CMatrix n3(n, n);
    const CMatrix id = CMatrix::Identity(3, 3);
    for (Eigen::Index t = 0; t < n; ++t) {
        const Complex lam = grid->points[t].lambda;
        for (Eigen::Index u = 0; u < n; ++u) {
            const Complex mu = grid->points[u].lambda;
            const CMatrix mid = (id - fv[u].adjoint() * fv[t]) / (1.0 - std::conj(mu) * lam);
            n3(t, u) = (eta.col(u).adjoint() * mid * eta.col(t))(0, 0);
        }
    }
    out.n3 = {grid, n3};
    return out;
}

SampledKernel combine_k(const KernelTriple& triple) {
    triple.validate();
    const auto& pts = triple.grid()->points;
    const auto n = static_cast<Eigen::Index>(pts.size());
    CMatrix k(n, n);
    for (Eigen::Index t = 0; t < n; ++t) {
        for (Eigen::Index u = 0; u < n; ++u) {
            const auto& pt = pts[t];
            const auto& pu = pts[u];
            k(t, u) = 1.0 - (1.0 - std::conj(pu.z1) * pt.z1) * triple.n1.gram(t, u) -
                      (1.0 - std::conj(pu.z2) * pt.z2) * triple.n2.gram(t, u) -
                      (1.0 - std::conj(pu.lambda) * pt.lambda) * triple.n3.gram(t, u);
        }
    }
    return {triple.grid(), k};
}

int kernel_rank(const SampledKernel& n, double tol) {
    if (n.gram.size() == 0) return 0;
    // Absolute floor so round-off on an all-zero kernel does not count as rank.
    if (n.gram.cwiseAbs().maxCoeff() <= 1e-14) return 0;
    const GramFactor gf = gram_factor_full(n.gram, tol);
    return gf.rank;
}

MembershipReport membership_report(const KernelTriple& triple, KernelSet which, double tol) {
    triple.validate();
    if (which == KernelSet::S1 && !triple.grid()->diagonal) {
        throw DomainError("membership in S1 requires a diagonal grid");
    }
    MembershipReport r;
    const SampledKernel k = combine_k(triple);
    auto psd = [&](const CMatrix& m) {
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        return min_eigenvalue(m, tol * scale) >= -tol * scale;
    };
    auto rank = [&](const CMatrix& m) {
        if (m.size() == 0 || m.cwiseAbs().maxCoeff() <= std::max(tol, 1e-14)) return 0;
        try {
            return gram_factor_full(m, tol).rank;
        } catch (const IndefiniteError&) {
            return -1;
        }
    };
    const CMatrix n1 = which == KernelSet::S1 ? CMatrix(triple.n1.gram + triple.n2.gram)
                                              : triple.n1.gram;
    r.psd_n1 = psd(n1);
    r.psd_n2 = psd(triple.n2.gram);
    r.psd_n3 = psd(triple.n3.gram);
    r.psd_k = psd(k.gram);
    r.rank_n1 = rank(n1);
    r.rank_n2 = rank(triple.n2.gram);
    r.rank_n3 = rank(triple.n3.gram);
    r.rank_k = rank(k.gram);
    const bool all_psd = r.psd_n1 && r.psd_n2 && r.psd_n3 && r.psd_k;
    switch (which) {
        case KernelSet::R1:
        case KernelSet::S1:
            r.member = all_psd && r.rank_k >= 0 && r.rank_k <= 1;
            break;
        case KernelSet::R11:
            r.member = all_psd && r.rank_n1 == 1 && r.rank_n2 == 1 && r.rank_k == 1;
            break;
    }
    return r;
}

bool membership(const KernelTriple& triple, KernelSet which, double tol) {
    return membership_report(triple, which, tol).member;
}

}  // namespace gammamaps
