#pragma once

#include <cmath>
#include <memory>

#include "doctest.h"
#include "gammamaps/kernel_maps.hpp"
#include "gammamaps/schur_realization.hpp"
#include "generators.hpp"

namespace gmtest {

using gammamaps::CVector;
using gammamaps::RealizedSchurFunction;

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline CMatrix diag3(Complex a, Complex b, Complex c) {
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return d;
}

inline gammamaps::GridPtr share(gammamaps::SampleGrid g) {
    return std::make_shared<const gammamaps::SampleGrid>(std::move(g));
}

/// diag(f11, G): scalar Schur function f11 beside a 2x2 Schur function G, so
/// F21 = F31 = 0 identically.
inline RealizedSchurFunction block_diagonal(std::uint64_t seed, int m1 = 2, int m2 = 2) {
    const auto a = gammamaps::random_schur(1, m1, seed);
    const auto b = gammamaps::random_schur(2, m2, seed + 7777);
    const int m = m1 + m2;
    CMatrix p = CMatrix::Zero(3, 3), q = CMatrix::Zero(3, m), r = CMatrix::Zero(m, 3), s = CMatrix::Zero(m, m);
    p(0, 0) = a.P()(0, 0);
    p.block(1, 1, 2, 2) = b.P();
    q.block(0, 0, 1, m1) = a.Q();
    q.block(1, m1, 2, m2) = b.Q();
    r.block(0, 0, m1, 1) = a.R();
    r.block(m1, 1, m2, 2) = b.R();
    s.block(0, 0, m1, m1) = a.S();
    s.block(m1, m1, m2, m2) = b.S();
    return {p, q, r, s};
}

/// Contractive 3x3 F with |F21(0)|, |F31(0)| bounded below.
inline RealizedSchurFunction generic_schur(std::uint64_t seed, int m) {
    for (;; ++seed) {
        auto f = gammamaps::random_schur(3, m, seed);
        const CMatrix f0 = f(0.0);
        if (std::abs(f0(1, 0)) > 1e-2 && std::abs(f0(2, 0)) > 1e-2) return f;
    }
}

}  // namespace gmtest
