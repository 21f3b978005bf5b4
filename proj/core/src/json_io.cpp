#include "gammamaps/json_io.hpp"

#include <sstream>

#include "gammamaps/errors.hpp"

namespace gammamaps::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw DomainError(std::string("json: missing field '") + key + "'");
    }
    return j.at(key);
}

}  // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw DomainError("json: complex numbers are [re, im] pairs, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const std::vector<Complex>& v) {
    json a = json::array();
    for (Complex z : v) a.push_back(to_json(z));
    return a;
}

std::vector<Complex> complex_list_from(const json& j) {
    if (!j.is_array()) throw DomainError("json: expected an array of complex numbers");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(complex_from(e));
    return out;
}

json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(i, c)));
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from(const json& j) {
    if (!j.is_array()) throw DomainError("json: matrices are arrays of rows");
    std::vector<std::vector<Complex>> rows;
    for (const auto& r : j) rows.push_back(complex_list_from(r));
    return from_rows(rows);
}

namespace {

CMatrix sized_matrix_from(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (j.is_array() && j.empty()) return CMatrix(rows, cols);
    CMatrix m = matrix_from(j);
    if (m.rows() != rows || m.cols() != cols) {
        std::ostringstream os;
        os << "json: expected a " << rows << "x" << cols << " block, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
    return m;
}

}  // namespace

json to_json(const RealizedSchurFunction& f) {
    return json{{"k", f.k()}, {"m", f.m()},           {"P", to_json(f.P())},
                {"Q", to_json(f.Q())}, {"R", to_json(f.R())}, {"S", to_json(f.S())}};
}

RealizedSchurFunction schur_from(const json& j) {
    const int k = field(j, "k").get<int>();
    const int m = j.value("m", 0);
    if (k < 0 || m < 0) throw DimensionError("json: negative realization size");
    return RealizedSchurFunction(sized_matrix_from(field(j, "P"), k, k),
                                 m ? sized_matrix_from(field(j, "Q"), k, m) : CMatrix(k, 0),
                                 m ? sized_matrix_from(field(j, "R"), m, k) : CMatrix(0, k),
                                 m ? sized_matrix_from(field(j, "S"), m, m) : CMatrix(0, 0));
}

json to_json(const SampleGrid& g) {
    json pts = json::array();
    for (const auto& p : g.points) pts.push_back(json::array({to_json(p.lambda), to_json(p.z1), to_json(p.z2)}));
    return json{{"diagonal", g.diagonal}, {"points", pts}};
}

SampleGrid grid_from(const json& j) {
    SampleGrid g;
    g.diagonal = j.value("diagonal", false);
    for (const auto& p : field(j, "points")) {
        const auto v = complex_list_from(p);
        if (v.size() != 3) throw DimensionError("json: grid points are [lambda, z1, z2]");
        g.points.push_back({v[0], v[1], v[2]});
    }
    g.validate();
    return g;
}

json to_json(const KernelTriple& t) {
    return json{{"grid", to_json(*t.grid())},
                {"N1", to_json(t.n1.gram)},
                {"N2", to_json(t.n2.gram)},
                {"N3", to_json(t.n3.gram)}};
}

KernelTriple triple_from(const json& j) {
    auto grid = std::make_shared<const SampleGrid>(grid_from(field(j, "grid")));
    const auto n = static_cast<Eigen::Index>(grid->size());
    KernelTriple t;
    t.n1 = {grid, sized_matrix_from(field(j, "N1"), n, n)};
    t.n2 = {grid, sized_matrix_from(field(j, "N2"), n, n)};
    t.n3 = {grid, sized_matrix_from(field(j, "N3"), n, n)};
    t.validate();
    return t;
}

json to_json(const RankOneFactor& f) {
    return json{{"values", to_json(f.values)}, {"anchor", f.anchor}};
}

RankOneFactor factor_from(const json& j) {
    RankOneFactor f;
    const auto v = complex_list_from(field(j, "values"));
    f.values = CVector(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) f.values(static_cast<Eigen::Index>(i)) = v[i];
    f.anchor = j.value("anchor", std::size_t{0});
    return f;
}

json to_json(const UWResult& r) {
    return json{{"xi", to_json(r.xi)},
                {"f1", to_json(r.f1)},
                {"f2", to_json(r.f2)},
                {"g", to_json(r.g)},
                {"state_dim", r.state_dim},
                {"gram_residual", r.gram_residual}};
}

UWResult uw_result_from(const json& j) {
    UWResult r;
    r.xi = schur_from(field(j, "xi"));
    r.f1 = factor_from(field(j, "f1"));
    r.f2 = factor_from(field(j, "f2"));
    r.g = factor_from(field(j, "g"));
    r.state_dim = j.value("state_dim", r.xi.m());
    r.gram_residual = j.value("gram_residual", 0.0);
    return r;
}

json to_json(const GammaPoint& p) { return to_json(p.x); }

GammaPoint gamma_point_from(const json& j, GammaVariant v) {
    GammaPoint p;
    p.variant = v;
    p.x = complex_list_from(j);
    p.validate();
    return p;
}

json to_json(const PickData& d) {
    json targets = json::array();
    for (const auto& w : d.targets) targets.push_back(to_json(w));
    return json{{"variant", "pick"}, {"k", d.k()}, {"nodes", to_json(d.nodes)}, {"targets", targets}};
}

PickData pick_from(const json& j) {
    PickData d;
    d.nodes = complex_list_from(field(j, "nodes"));
    for (const auto& t : field(j, "targets")) {
        const bool scalar = t.is_number() || (t.is_array() && t.size() == 2 && t[0].is_number());
        if (scalar) {
            CMatrix w(1, 1);
            w(0, 0) = complex_from(t);
            d.targets.push_back(w);
        } else {
            d.targets.push_back(matrix_from(t));
        }
    }
    if (j.contains("k") && !d.targets.empty() && j.at("k").get<int>() != d.k()) {
        throw DimensionError("json: declared k does not match the targets");
    }
    d.validate();
    return d;
}

json to_json(const GammaCurveData& d) {
    json j{{"variant", variant_name(d.variant)}};
    if (d.is_rational()) {
        json nums = json::array();
        for (const auto& p : d.numerators) nums.push_back(to_json(p));
        j["numerators"] = nums;
        j["denominator"] = to_json(d.denominator);
    }
    if (!d.nodes.empty()) {
        j["nodes"] = to_json(d.nodes);
        json pts = json::array();
        for (const auto& p : d.points) pts.push_back(to_json(p));
        j["points"] = pts;
    }
    return j;
}

GammaCurveData gamma_curve_from(const json& j) {
    GammaCurveData d;
    d.variant = parse_variant(field(j, "variant").get<std::string>());
    if (j.contains("numerators")) {
        for (const auto& p : j.at("numerators")) d.numerators.push_back(complex_list_from(p));
        d.denominator = j.contains("denominator") ? complex_list_from(j.at("denominator"))
                                                  : Polynomial{Complex(1.0)};
    }
    if (j.contains("nodes")) {
        d.nodes = complex_list_from(j.at("nodes"));
        for (const auto& p : field(j, "points")) d.points.push_back(gamma_point_from(p, d.variant));
    } else if (d.is_rational() == false) {
        throw DomainError("json: gamma data needs nodes/points or numerators");
    }
    d.validate();
    return d;
}

json to_json(const CertifyReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells) {
        json cell{{"z", to_json(c.z)},
                  {"split", c.split},
                  {"solvable", c.solvable},
                  {"min_eig", c.min_eig}};
        if (c.solvable) {
            cell["residual"] = c.residual;
            cell["state_dim"] = c.state_dim;
        }
        cells.push_back(cell);
    }
    return json{{"cells", cells},
                {"fully_solvable_splits", r.fully_solvable_splits},
                {"solvable", r.solvable()}};
}

}  // namespace gammamaps::io
