#pragma once

#include <string>
#include <vector>

#include "gammamaps/numerics.hpp"

namespace gammamaps {

/// Block-diagonal perturbation structure diag(z_1 I_{r_1}, ..., z_s I_{r_s}).
struct BlockStructure {
    int n = 0;
    std::vector<int> r;

    int s() const { return static_cast<int>(r.size()); }
    bool operator==(const BlockStructure& o) const { return n == o.n && r == o.r; }

    /// (3;3;1,1,1)
    static BlockStructure three_scalar();
    /// (3;2;1,2)
    static BlockStructure one_two();
    /// (2;2;1,1)
    static BlockStructure two_scalar();

    /// Throws DimensionError unless this is one of the three supported instances.
    void validate() const;
    std::string name() const;
};

enum class GammaVariant { Gamma7, Gamma5, Gamma3 };

int coordinate_count(GammaVariant v);
std::string variant_name(GammaVariant v);
GammaVariant parse_variant(const std::string& s);
BlockStructure structure_of(GammaVariant v);

/// Coordinate tuple. Storage order:
///   Gamma7: (a11, a22, a11a22-a12a21, a33, a11a33-a13a31, a22a33-a23a32, det A)
///   Gamma5: (a11, [1,2]+[1,3] minors, det A, a22+a33, [2,3] minor)
///   Gamma3: (a11, a22, det A)
struct GammaPoint {
    GammaVariant variant = GammaVariant::Gamma7;
    std::vector<Complex> x;

    void validate() const;
    Complex operator[](std::size_t i) const { return x[i]; }
};

struct MuOptions {
    int phase_grid = 720;
    int refine_iters = 60;
};

/// Structured singular value for a supported block structure, computed as the
/// maximum of rho(A * U) over unitary U in the structure.
double mu(const CMatrix& a, const BlockStructure& e, const MuOptions& opts = {});

/// Spectral radius of A * diag(phases expanded by block multiplicities).
double rho_structured(const CMatrix& a, const BlockStructure& e,
                      const std::vector<Complex>& phases);

GammaPoint pi_coordinates(const CMatrix& a, GammaVariant v);

struct Membership {
    double mu = 0.0;
    bool member = false;         // mu <= 1 + tol
    bool strict = false;         // mu < 1 - tol
    bool near_boundary = false;  // |mu - 1| <= tol
};

Membership classify(const CMatrix& a, const BlockStructure& e, double tol,
                    const MuOptions& opts = {});
bool in_gamma(const CMatrix& a, const BlockStructure& e, double tol,
              const MuOptions& opts = {});

/// Closed tetrablock test |x1 - conj(x2) x3| + |x2 - conj(x1) x3| <= 1 - |x3|^2, |x3| <= 1.
bool tetrablock_member(const GammaPoint& x, double tol);
/// Signed slack of the tetrablock inequalities (>= 0 inside).
double tetrablock_margin(Complex x1, Complex x2, Complex x3);

}  // namespace gammamaps
