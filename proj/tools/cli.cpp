#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gammamaps/errors.hpp"
#include "gammamaps/fractional_se.hpp"
#include "gammamaps/json_io.hpp"
#include "gammamaps/kernel_maps.hpp"
#include "gammamaps/mu_gamma.hpp"
#include "gammamaps/np_reduction.hpp"
#include "gammamaps/schur_realization.hpp"
#include "gammamaps/uw_right_s.hpp"

namespace gammamaps::cli {

namespace {

using io::json;

struct Options {
    double tol = 1e-9;
    int grid = 16;
    std::uint64_t seed = 0;
    std::vector<Complex> z2_grid = default_z_grid();
    std::vector<std::string> splits{"balanced", "left-one"};
    int n_boundary = 2048;
    std::string det_denominator = "printed";
};

// Flags as given on the command line; unset ones fall back to the instance
// file, then to the defaults above.
struct Flags {
    std::string in, out;
    std::optional<double> tol;
    std::optional<int> grid;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> z2_grid;
    std::optional<std::string> split;
    std::optional<int> n_boundary;
    std::optional<std::string> det_denominator;
    bool text = false;
};

struct Outcome {
    json report;
    int code = kOk;
};

Complex parse_complex(const std::string& s) {
    const char* p = s.c_str();
    char* end = nullptr;
    const double a = std::strtod(p, &end);
    if (end == p) throw DomainError("cannot read a complex number from '" + s + "'");
    if (*end == '\0') return {a, 0.0};
    if (*end == 'i' && end[1] == '\0') return {0.0, a};
    const char* q = end;
    const double b = std::strtod(q, &end);
    if (end == q || *end != 'i' || end[1] != '\0') {
        throw DomainError("cannot read a complex number from '" + s + "' (use forms like 0.3, -0.2i, 0.3-0.2i)");
    }
    return {a, b};
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (!item.empty()) out.push_back(item);
    }
    if (out.empty()) throw DomainError("empty list '" + s + "'");
    return out;
}

Options resolve(const Flags& f, const json& file, double default_tol) {
    Options o;
    o.tol = default_tol;
    if (file.is_object() && file.contains("options")) {
        const json& j = file.at("options");
        o.tol = j.value("tol", o.tol);
        o.grid = j.value("grid", o.grid);
        o.seed = j.value("seed", o.seed);
        if (j.contains("z2_grid")) o.z2_grid = io::complex_list_from(j.at("z2_grid"));
        if (j.contains("split")) {
            const json& s = j.at("split");
            o.splits = s.is_string() ? std::vector<std::string>{s.get<std::string>()}
                                     : s.get<std::vector<std::string>>();
        }
        o.n_boundary = j.value("n_boundary", o.n_boundary);
        o.det_denominator = j.value("det_denominator", o.det_denominator);
    }
    if (f.tol) o.tol = *f.tol;
    if (f.grid) o.grid = *f.grid;
    if (f.seed) o.seed = *f.seed;
    if (f.z2_grid) {
        o.z2_grid.clear();
        for (const auto& e : split_list(*f.z2_grid)) o.z2_grid.push_back(parse_complex(e));
    }
    if (f.split) o.splits = split_list(*f.split);
    if (f.n_boundary) o.n_boundary = *f.n_boundary;
    if (f.det_denominator) o.det_denominator = *f.det_denominator;

    if (!(o.tol > 0.0)) throw DomainError("--tol must be positive");
    if (o.grid < 1) throw DomainError("--grid must be at least 1");
    if (o.n_boundary < 16) throw DomainError("--n-boundary must be at least 16");
    if (o.z2_grid.empty()) throw DomainError("--z2-grid must not be empty");
    for (Complex z : o.z2_grid)
        if (!(std::abs(z) < 1.0)) throw DomainError("--z2-grid entries must lie in the open disc");
    if (o.splits.empty()) throw DomainError("--split must name at least one rule");
    for (const auto& s : o.splits) parse_split(s);
    parse_formulas(o.det_denominator);
    return o;
}

json options_json(const Options& o) {
    return json{{"tol", o.tol},
                {"grid", o.grid},
                {"seed", o.seed},
                {"z2_grid", io::to_json(o.z2_grid)},
                {"split", o.splits},
                {"n_boundary", o.n_boundary},
                {"det_denominator", o.det_denominator}};
}

json read_instance(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in;
    std::istream* src = &std::cin;
    if (path != "-") {
        in.open(path);
        if (!in) throw DomainError("cannot open '" + path + "'");
        src = &in;
    }
    json j = json::parse(*src);
    if (!j.is_object()) throw DomainError("instance files are JSON objects");
    return j;
}

const json& payload(const json& file, const char* key) {
    if (!file.contains(key)) throw DomainError(std::string("instance needs a '") + key + "' field");
    return file.at(key);
}

// Payload stored either under `key` or at the top level.
const json& nested_or_top(const json& file, const char* key) {
    return file.contains(key) ? file.at(key) : file;
}

std::vector<SplitRule> rules_of(const Options& o) {
    std::vector<SplitRule> r;
    for (const auto& s : o.splits) r.push_back(parse_split(s));
    return r;
}

BlockStructure structure_from(const json& file, const CMatrix& a) {
    if (file.contains("structure")) {
        const std::string s = file.at("structure").get<std::string>();
        if (s == "three_scalar" || s == "E(3;3;1,1,1)") return BlockStructure::three_scalar();
        if (s == "one_two" || s == "E(3;2;1,2)") return BlockStructure::one_two();
        if (s == "two_scalar" || s == "E(2;2;1,1)") return BlockStructure::two_scalar();
        throw DomainError("unknown structure '" + s + "' (expected three_scalar, one_two or two_scalar)");
    }
    if (file.contains("variant")) return structure_of(parse_variant(file.at("variant").get<std::string>()));
    return a.rows() == 2 ? BlockStructure::two_scalar() : BlockStructure::three_scalar();
}

GammaVariant variant_for(const BlockStructure& e) {
    if (e == BlockStructure::one_two()) return GammaVariant::Gamma5;
    if (e == BlockStructure::two_scalar()) return GammaVariant::Gamma3;
    return GammaVariant::Gamma7;
}

GridPtr grid_for(const json& file, const Options& o) {
    if (file.contains("grid")) return std::make_shared<const SampleGrid>(io::grid_from(file.at("grid")));
    return std::make_shared<const SampleGrid>(SampleGrid::with_size(o.grid, o.seed));
}

KernelTriple triple_for(const json& file, const Options& o) {
    if (file.contains("triple")) return io::triple_from(file.at("triple"));
    return upper_e(io::schur_from(payload(file, "schur")), grid_for(file, o));
}

// ------------------------------------------------------------------ commands

Outcome cmd_mu(const json& file, const Options&) {
    const CMatrix a = io::matrix_from(payload(file, "matrix"));
    const BlockStructure e = structure_from(file, a);
    return {json{{"mu", mu(a, e)}, {"structure", e.name()}}};
}

Outcome cmd_gamma_check(const json& file, const Options& o) {
    if (file.contains("point")) {
        const GammaVariant v = parse_variant(file.value("variant", std::string("gamma3")));
        if (v != GammaVariant::Gamma3) {
            throw DomainError("point membership is decided for gamma3 only; pass a matrix for gamma5 or gamma7");
        }
        const GammaPoint x = io::gamma_point_from(file.at("point"), v);
        const bool member = tetrablock_member(x, o.tol);
        return {json{{"variant", "gamma3"}, {"member", member}, {"margin", tetrablock_margin(x[0], x[1], x[2])}},
                member ? kOk : kUnsolvable};
    }
    const CMatrix a = io::matrix_from(payload(file, "matrix"));
    const BlockStructure e = structure_from(file, a);
    const Membership m = classify(a, e, o.tol);
    const GammaVariant v = variant_for(e);
    return {json{{"variant", variant_name(v)},
                 {"structure", e.name()},
                 {"coordinates", io::to_json(pi_coordinates(a, v))},
                 {"mu", m.mu},
                 {"member", m.member},
                 {"strict", m.strict},
                 {"near_boundary", m.near_boundary}},
            m.member ? kOk : kUnsolvable};
}

Outcome cmd_se(const json& file, const Options& o) {
    const RealizedSchurFunction f = io::schur_from(payload(file, "schur"));
    std::vector<GridPoint> pts;
    if (file.contains("points")) {
        for (const auto& p : file.at("points")) {
            const auto v = io::complex_list_from(p);
            if (v.size() != 3) throw DimensionError("points are [lambda, z1, z2] triples");
            pts.push_back({v[0], v[1], v[2]});
        }
    } else {
        pts = grid_for(file, o)->points;
    }
    json values = json::array();
    double sup = 0.0;
    for (const auto& p : pts) {
        const Complex v = se_value(f, p.lambda, p.z1, p.z2);
        sup = std::max(sup, std::abs(v));
        values.push_back(json{{"at", io::to_json(std::vector<Complex>{p.lambda, p.z1, p.z2})}, {"se", io::to_json(v)}});
    }
    const bool contractive = sup <= 1.0 + o.tol;
    return {json{{"values", values}, {"sup_abs", sup}, {"contractive", contractive}},
            contractive ? kOk : kUnsolvable};
}

Outcome cmd_upper_e(const json& file, const Options& o) {
    const RealizedSchurFunction f = io::schur_from(payload(file, "schur"));
    const KernelTriple t = upper_e(f, grid_for(file, o));
    return {json{{"triple", io::to_json(t)},
                 {"ranks",
                  {{"N1", kernel_rank(t.n1, o.tol)},
                   {"N2", kernel_rank(t.n2, o.tol)},
                   {"N3", kernel_rank(t.n3, o.tol)},
                   {"K", kernel_rank(combine_k(t), o.tol)}}}}};
}

Outcome cmd_uw(const json& file, const Options& o) {
    const KernelTriple t = triple_for(file, o);
    UWOptions uo;
    uo.rank_tol = o.tol;
    const UWResult r = uw_construct(t, uo);
    const UWReport rep = verify_uw(r, *t.grid(), std::max(uo.tol, o.tol));
    return {json{{"result", io::to_json(r)}, {"verify_residual", rep.residual}, {"verified", rep.pass}}};
}

Outcome cmd_right_s(const json& file, const Options& o) {
    const RankOneFactor f = right_s(triple_for(file, o), o.tol);
    return {json{{"factor", io::to_json(f)}}};
}

json np_body(const PickData& d, const Options& o, bool& solvable) {
    const PickCheck c = pick_check(d, o.tol);
    solvable = c.solvable;
    json j{{"solvable", c.solvable}, {"min_eig", c.min_eig}};
    if (c.solvable) {
        const RealizedSchurFunction f = np_solve(d, o.tol);
        j["interpolant"] = io::to_json(f);
        j["residual"] = np_residual(f, d);
    }
    return j;
}

Outcome cmd_np(const json& file, const Options& o) {
    const PickData d = io::pick_from(nested_or_top(file, "pick"));
    bool solvable = false;
    json j = np_body(d, o, solvable);
    return {j, solvable ? kOk : kUnsolvable};
}

Outcome cmd_reduce(const json& file, const Options& o) {
    const GammaCurveData curve = io::gamma_curve_from(nested_or_top(file, "curve"));
    const Complex z = file.contains("z") ? io::complex_from(file.at("z")) : o.z2_grid.front();
    const SplitRule rule = parse_split(o.splits.front());
    auto reduced = [&](const PickData& d) {
        bool solvable = false;
        json j = np_body(d, o, solvable);
        j["pick"] = io::to_json(d);
        return j;
    };
    json j{{"variant", variant_name(curve.variant)}, {"z", io::to_json(z)}, {"split", rule.name()}};
    switch (curve.variant) {
        case GammaVariant::Gamma7:
            j["reduction"] = reduced(reduce_gamma7(curve, z, rule));
            break;
        case GammaVariant::Gamma5:
            j["reduction"] = json{{"printed", reduced(reduce_gamma5(curve, z, rule, Gamma5Formulas::Printed))},
                                  {"corrected", reduced(reduce_gamma5(curve, z, rule, Gamma5Formulas::Corrected))}};
            break;
        case GammaVariant::Gamma3:
            throw DomainError("reduce handles gamma7 and gamma5 data");
    }
    return {j};
}

Outcome cmd_certify(const json& file, const Options& o) {
    const GammaCurveData curve = io::gamma_curve_from(nested_or_top(file, "curve"));
    const auto rules = rules_of(o);
    json j{{"variant", variant_name(curve.variant)}};
    bool solvable = false;
    switch (curve.variant) {
        case GammaVariant::Gamma7: {
            const CertifyReport r = certify_gamma7_interpolation(curve, o.z2_grid, rules, o.tol);
            j["report"] = io::to_json(r);
            solvable = r.solvable();
            break;
        }
        case GammaVariant::Gamma5: {
            const Gamma5Formulas chosen = parse_formulas(o.det_denominator);
            json both;
            for (Gamma5Formulas f : {Gamma5Formulas::Printed, Gamma5Formulas::Corrected}) {
                const CertifyReport r = certify_gamma5_interpolation(curve, o.z2_grid, rules, o.tol, f);
                both[formulas_name(f)] = io::to_json(r);
                if (f == chosen) solvable = r.solvable();
            }
            j["report"] = both;
            j["decided_by"] = o.det_denominator;
            break;
        }
        case GammaVariant::Gamma3:
            throw DomainError("certify handles gamma7 and gamma5 data");
    }
    j["solvable"] = solvable;
    return {j, solvable ? kOk : kUnsolvable};
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Outcome cmd_verify_identities(const json& file, const Options& o) {
    const double tol = o.tol;
    const RealizedSchurFunction f =
        file.contains("schur") ? io::schur_from(file.at("schur")) : random_schur(3, 3, o.seed);
    const GridPtr grid = grid_for(file, o);
    const auto n = static_cast<Eigen::Index>(grid->size());
    const KernelTriple t = upper_e(f, grid);
    const SampledKernel k = combine_k(t);

    std::vector<Complex> g(static_cast<std::size_t>(n));
    double se_excess = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto& p = grid->points[static_cast<std::size_t>(a)];
        g[static_cast<std::size_t>(a)] = se_eval(f, p.lambda, p.z1, p.z2).value;
        se_excess = std::max(se_excess, std::abs(g[static_cast<std::size_t>(a)]) - 1.0);
    }
    double identity = 0.0, k_gram = 0.0;
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto& pa = grid->points[static_cast<std::size_t>(a)];
            const auto& pb = grid->points[static_cast<std::size_t>(b)];
            const Complex outer = std::conj(g[static_cast<std::size_t>(b)]) * g[static_cast<std::size_t>(a)];
            const Complex weighted = (1.0 - std::conj(pb.z1) * pa.z1) * t.n1.gram(a, b) +
                                     (1.0 - std::conj(pb.z2) * pa.z2) * t.n2.gram(a, b) +
                                     (1.0 - std::conj(pb.lambda) * pa.lambda) * t.n3.gram(a, b);
            identity = std::max(identity, std::abs(1.0 - outer - weighted));
            k_gram = std::max(k_gram, std::abs(k.gram(a, b) - outer));
        }

    const UWResult uw = uw_construct(t);
    const double uw_res = verify_uw(uw, *grid, tol).residual;
    const KernelTriple back = upper_e(uw.xi, grid);
    const double uw_gram = std::max({max_abs(back.n1.gram - t.n1.gram), max_abs(back.n2.gram - t.n2.gram),
                                     max_abs(back.n3.gram - t.n3.gram)});
    const double torus = fit_torus(f, uw.xi, grid->distinct_lambdas()).residual;

    const RankOneFactor s = right_s(t);
    double s_mod = 0.0, s_phase = 0.0;
    std::optional<Complex> ref;
    for (Eigen::Index a = 0; a < n; ++a) {
        const Complex se = -g[static_cast<std::size_t>(a)];
        s_mod = std::max(s_mod, std::abs(std::abs(s.values(a)) - std::abs(se)));
        if (std::abs(se) < 1e-6) continue;
        const Complex ratio = s.values(a) / se / std::abs(s.values(a) / se);
        if (!ref) ref = ratio;
        s_phase = std::max(s_phase, std::abs(ratio - *ref));
    }

    // Slice of the coordinate curve of a strictly contractive 3x3 function.
    const RealizedSchurFunction b = random_schur(3, 2, o.seed, 0.9);
    const GammaCurveData curve = gamma_curve_from_realization(b, GammaVariant::Gamma7);
    SliceOptions so;
    so.n_boundary = o.n_boundary;
    const Complex z2 = o.z2_grid.size() > 1 ? o.z2_grid[1] : o.z2_grid.front();
    const SlicedSchur2x2 sl = build_slice_schur(curve, z2, so);
    double slice_det = 0.0, slice_transfer = 0.0;
    for (const auto& p : grid->points) {
        const CMatrix v = sl.evaluate(p.lambda);
        const GammaPoint x = curve.at(p.lambda);
        const Complex y3 = (x[4] - z2 * x[6]) / (1.0 - z2 * x[1]);
        slice_det = std::max(slice_det, std::abs(v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0) - y3));
        slice_transfer = std::max(slice_transfer, std::abs(psi3_eval(curve, p.lambda, p.z1, z2) - sl.transfer(p.lambda, p.z1)));
    }

    const std::vector<std::pair<const char*, double>> rows{
        {"kernel_identity", identity},   {"k_gram", k_gram},          {"se_excess", std::max(se_excess, 0.0)},
        {"uw_verify", uw_res},           {"uw_gram_roundtrip", uw_gram}, {"torus_fit", torus},
        {"right_s_modulus", s_mod},      {"right_s_phase", s_phase},  {"slice_det", slice_det},
        {"slice_transfer", slice_transfer}};
    json table = json::array();
    bool ok = true;
    for (const auto& [name, value] : rows) {
        const bool pass = value <= tol;
        ok = ok && pass;
        table.push_back(json{{"identity", name}, {"residual", value}, {"pass", pass}});
    }
    return {json{{"residuals", table}, {"threshold", tol}, {"all_pass", ok}}, ok ? kOk : kUnsolvable};
}

// ------------------------------------------------------------------ output

std::string scalar_text(const json& v) {
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        std::ostringstream os;
        os.precision(12);
        const double im = v[1].get<double>();
        os << v[0].get<double>() << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
        return os.str();
    }
    return v.dump();
}

void text_lines(const json& v, const std::string& prefix, std::ostream& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            text_lines(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()) &&
        !(v.size() == 2 && v[0].is_number())) {
        for (std::size_t i = 0; i < v.size(); ++i) text_lines(v[i], prefix + "[" + std::to_string(i) + "]", out);
        return;
    }
    out << prefix << " = " << scalar_text(v) << "\n";
}

using Handler = Outcome (*)(const json&, const Options&);

struct Command {
    const char* name;
    const char* help;
    Handler handler;
    bool needs_input;
    double default_tol;
};

const Command kCommands[] = {
    {"mu", "structured singular value of a 3x3 (or 2x2) matrix", cmd_mu, true, 1e-9},
    {"gamma-check", "Gamma-domain membership of a matrix or tetrablock point", cmd_gamma_check, true, 1e-9},
    {"se", "SE values of a realized Schur function", cmd_se, true, 1e-9},
    {"upper-e", "kernel triple of a realized Schur function on a grid", cmd_upper_e, true, 1e-9},
    {"uw", "realization from a kernel triple", cmd_uw, true, 1e-9},
    {"right-s", "rank-one factor of the combined kernel", cmd_right_s, true, 1e-9},
    {"np", "matricial Nevanlinna-Pick solvability and interpolant", cmd_np, true, 1e-9},
    {"reduce", "Pick data of a Gamma interpolation problem at one slice", cmd_reduce, true, 1e-9},
    {"certify", "Gamma interpolation solvability over a slice grid", cmd_certify, true, 1e-9},
    {"verify-identities", "residual table for the structural identities", cmd_verify_identities, false, 1e-8},
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gamma-domain maps and interpolation reductions", "gammamaps"};
    app.require_subcommand(1);
    app.fallthrough();

    Flags flags;
    app.add_option("--in", flags.in, "instance file (JSON); '-' reads standard input");
    app.add_option("--out", flags.out, "write the report here instead of standard output");
    app.add_option("--tol", flags.tol, "tolerance");
    app.add_option("--seed", flags.seed, "seed for generated grids and functions");
    app.add_option("--grid", flags.grid, "number of grid points");
    app.add_option("--z2-grid", flags.z2_grid, "comma-separated slice parameters, e.g. 0,0.5,-0.3+0.2i");
    app.add_option("--split", flags.split, "split rules: balanced, left-one or both comma-separated");
    app.add_option("--n-boundary", flags.n_boundary, "boundary samples for inner-outer factorization");
    app.add_flag("--text", flags.text, "plain-text report");
    app.add_option("--det-denominator", flags.det_denominator, "Gamma5 slice formulas: printed or corrected")
        ->check(CLI::IsMember({"printed", "corrected"}));

    std::vector<std::pair<CLI::App*, const Command*>> subs;
    for (const auto& c : kCommands) subs.emplace_back(app.add_subcommand(c.name, c.help), &c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    const Command* cmd = nullptr;
    for (const auto& [sub, c] : subs)
        if (sub->parsed()) cmd = c;

    Outcome result;
    Options opts;
    try {
        const json file = read_instance(flags.in);
        if (cmd->needs_input && flags.in.empty()) throw DomainError(std::string(cmd->name) + " needs --in");
        if (file.contains("command") && file.at("command").get<std::string>() != cmd->name) {
            throw DomainError("instance is for '" + file.at("command").get<std::string>() + "', not '" + cmd->name +
                              "'");
        }
        opts = resolve(flags, file, cmd->default_tol);
        result = cmd->handler(file, opts);
    } catch (const json::exception& e) {
        err << "error: malformed instance: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    json report{{"command", cmd->name}, {"options", options_json(opts)}};
    report.update(result.report);
    report["exit_code"] = result.code;

    std::ofstream file_out;
    std::ostream* dst = &out;
    if (!flags.out.empty()) {
        file_out.open(flags.out);
        if (!file_out) {
            err << "error: cannot write '" << flags.out << "'\n";
            return kInputError;
        }
        dst = &file_out;
    }
    if (flags.text) {
        text_lines(report, "", *dst);
    } else {
        *dst << report.dump(2) << "\n";
    }
    return result.code;
}

}  // namespace gammamaps::cli
