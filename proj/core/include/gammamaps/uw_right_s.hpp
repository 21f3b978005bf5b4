#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "gammamaps/kernel_maps.hpp"
#include "gammamaps/schur_realization.hpp"

namespace gammamaps {

inline constexpr std::size_t kFirstNonzero = std::numeric_limits<std::size_t>::max();

/// Values f(point_t) with gram = f f^*. The entry at `anchor` is real and >= 0.
struct RankOneFactor {
    CVector values;
    std::size_t anchor = 0;
};

/// Rank <= 1 factorization. With anchor == kFirstNonzero the phase is fixed by
/// the first entry whose modulus exceeds a relative threshold.
RankOneFactor rank1_factor(const SampledKernel& n, double tol = kDefaultRankTol,
                           std::size_t anchor = kFirstNonzero);

struct UWOptions {
    double tol = 1e-8;          // Gram consistency and factor reconstruction
    double rank_tol = 1e-9;     // rank decisions on N1, N2, K
    double state_tol = 1e-12;   // eigenvalue cut for the state space factor, relative to max(1, |N3|)
    std::size_t anchor = kFirstNonzero;
};

struct UWResult {
    RealizedSchurFunction xi;
    RankOneFactor f1, f2, g;
    int state_dim = 0;
    double gram_residual = 0.0;
};

UWResult uw_construct(const KernelTriple& triple, const UWOptions& opts = {});

struct UWReport {
    double residual = 0.0;
    bool pass = true;
};

/// max_t || Xi(lambda_t) (1, z1 f1, z2 f2) - (g, f1, f2) ||.
UWReport verify_uw(const UWResult& result, const SampleGrid& grid, double tol);

struct TorusFit {
    std::array<Complex, 3> eta{Complex(1.0), Complex(1.0), Complex(1.0)};
    double residual = 0.0;
};

/// Finds unimodular eta so that torus_conjugate(source, eta) matches target at
/// every lambda (phases read off the first column), and reports the max error.
TorusFit fit_torus(const RealizedSchurFunction& target, const RealizedSchurFunction& source,
                   const std::vector<Complex>& lambdas);

/// Rank-one factor f of the combined kernel with |f| <= 1 + tol on the grid.
RankOneFactor right_s(const KernelTriple& triple, double tol = 1e-9,
                      double rank_tol = kDefaultRankTol);

}  // namespace gammamaps
