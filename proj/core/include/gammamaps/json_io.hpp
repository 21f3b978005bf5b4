#pragma once

#include <nlohmann/json.hpp>

#include "gammamaps/kernel_maps.hpp"
#include "gammamaps/mu_gamma.hpp"
#include "gammamaps/np_reduction.hpp"
#include "gammamaps/schur_realization.hpp"
#include "gammamaps/uw_right_s.hpp"

namespace gammamaps::io {

using json = nlohmann::json;

// Complex numbers travel as [re, im]; matrices as arrays of rows.

json to_json(Complex z);
Complex complex_from(const json& j);
json to_json(const std::vector<Complex>& v);
std::vector<Complex> complex_list_from(const json& j);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
CMatrix matrix_from(const json& j);

json to_json(const RealizedSchurFunction& f);
RealizedSchurFunction schur_from(const json& j);

json to_json(const SampleGrid& g);
SampleGrid grid_from(const json& j);

json to_json(const KernelTriple& t);
KernelTriple triple_from(const json& j);

json to_json(const RankOneFactor& f);
RankOneFactor factor_from(const json& j);

json to_json(const UWResult& r);
UWResult uw_result_from(const json& j);

json to_json(const GammaPoint& p);
GammaPoint gamma_point_from(const json& j, GammaVariant v);

/// {"variant":"pick","k":2,"nodes":[...],"targets":[...]}
json to_json(const PickData& d);
PickData pick_from(const json& j);

/// {"variant":"gamma7","nodes":[...],"points":[[...],...]} or the rational form
/// {"variant":"gamma7","numerators":[[...],...],"denominator":[...]}.
json to_json(const GammaCurveData& d);
GammaCurveData gamma_curve_from(const json& j);

json to_json(const CertifyReport& r);

}  // namespace gammamaps::io
