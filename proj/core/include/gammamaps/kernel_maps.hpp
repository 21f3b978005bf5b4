#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gammamaps/numerics.hpp"
#include "gammamaps/schur_realization.hpp"

namespace gammamaps {

struct GridPoint {
    Complex lambda;
    Complex z1;
    Complex z2;
};

/// Finite point set in D x D^2. `diagonal` marks grids with z1 == z2 everywhere.
struct SampleGrid {
    std::vector<GridPoint> points;
    bool diagonal = false;

    std::size_t size() const { return points.size(); }
    void validate() const;

    /// Every lambda paired with every z-pair; lambda varies slowest.
    /// Points come from additive-recurrence sequences shifted by the seed.
    static SampleGrid tensor(int n_lambda, int n_z, std::uint64_t seed,
                             double radius = 0.9, bool diagonal = false);
    /// Tensor grid with about n points; the z-factor is the divisor of n
    /// closest to sqrt(n) that is at least 3 (falls back to n lambdas x 1).
    static SampleGrid with_size(int n, std::uint64_t seed, double radius = 0.9,
                                bool diagonal = false);
    std::vector<Complex> distinct_lambdas() const;
};

using GridPtr = std::shared_ptr<const SampleGrid>;

struct SampledKernel {
    GridPtr grid;
    CMatrix gram;  // gram(t, u) = N(point_t, point_u)
};

struct KernelTriple {
    SampledKernel n1, n2, n3;
    void validate() const;
    const GridPtr& grid() const { return n1.grid; }
};

KernelTriple upper_e(const RealizedSchurFunction& f, const GridPtr& grid);

/// K(t,u) = 1 - (1 - conj(w1) z1) N1 - (1 - conj(w2) z2) N2 - (1 - conj(mu) lambda) N3
/// with (lambda, z) = point_t and (mu, w) = point_u.
SampledKernel combine_k(const KernelTriple& triple);

int kernel_rank(const SampledKernel& n, double tol = kDefaultRankTol);

enum class KernelSet { R1, R11, S1 };

struct MembershipReport {
    bool member = false;
    bool psd_n1 = false, psd_n2 = false, psd_n3 = false, psd_k = false;
    int rank_n1 = 0, rank_n2 = 0, rank_n3 = 0, rank_k = 0;
};

/// PSD checks on N1, N2, N3 and K plus the rank conditions of the chosen set:
///   R1:  K rank <= 1
///   R11: N1, N2 and K of rank exactly 1
///   S1:  diagonal grid; the pair (N1 + N2, N3) with K rank <= 1
MembershipReport membership_report(const KernelTriple& triple, KernelSet which, double tol);
bool membership(const KernelTriple& triple, KernelSet which, double tol);

}  // namespace gammamaps
