#pragma once

#include <cstdint>

#include "gammamaps/numerics.hpp"

namespace gammamaps {

inline constexpr double kColligationTol = 1e-10;

/// F(lambda) = P + lambda Q (I - lambda S)^{-1} R with contractive [[P,Q],[R,S]].
class RealizedSchurFunction {
public:
    RealizedSchurFunction() = default;
    RealizedSchurFunction(CMatrix p, CMatrix q, CMatrix r, CMatrix s);

    /// Partition a (k+m)x(k+m) colligation.
    static RealizedSchurFunction from_colligation(const CMatrix& v, int k);
    static RealizedSchurFunction constant(const CMatrix& c);

    int k() const { return static_cast<int>(p_.rows()); }
    int m() const { return static_cast<int>(s_.rows()); }
    const CMatrix& P() const { return p_; }
    const CMatrix& Q() const { return q_; }
    const CMatrix& R() const { return r_; }
    const CMatrix& S() const { return s_; }
    CMatrix colligation() const;

    CMatrix evaluate(Complex lambda) const;
    CMatrix operator()(Complex lambda) const { return evaluate(lambda); }

private:
    CMatrix p_, q_, r_, s_;
};

/// Random contractive colligation: complex Gaussian entries, singular values
/// rescaled so the largest equals `bound`.
RealizedSchurFunction random_schur(int k, int m, std::uint64_t seed,
                                   double bound = 1.0 - 1e-6);

struct SchurReport {
    double max_norm = 0.0;
    Complex argmax{0.0, 0.0};
    bool pass = false;
};

/// Radial-angular grid of radius 1 - 1e-3: grid_size radii x 4*grid_size angles.
SchurReport verify_schur(const RealizedSchurFunction& f, int grid_size, double tol);

/// diag(e1,e2,e3) F diag(1, conj(e2), conj(e3)) for k = 3.
RealizedSchurFunction torus_conjugate(const RealizedSchurFunction& f, Complex e1,
                                      Complex e2, Complex e3);

}  // namespace gammamaps
