#include "kstab/io.hpp"

#include <fstream>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

json to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw InputError("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
    Vec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

json to_json(const LatticePolytope& P) {
    json verts = json::array();
    for (const auto& v : P.vertices()) verts.push_back(to_json(v));
    return {{"dim", P.dim()}, {"vertices", verts}};
}

LatticePolytope polytope_from_json(const json& j) {
    const int dim = field(j, "dim").get<int>();
    std::vector<Vec> pts;
    for (const auto& v : field(j, "vertices")) {
        pts.push_back(vec_from_json(v));
        if (static_cast<int>(pts.back().size()) != dim) throw InputError("vertex dimension differs from dim");
    }
    if (pts.empty()) throw InputError("polytope has no vertices");
    return LatticePolytope::from_points(std::move(pts));
}

json to_json(const PLFunction& f) {
    json ps = json::array();
    for (const auto& p : f.pieces()) ps.push_back({{"a", to_json(p.a)}, {"c", to_json(p.c)}});
    return {{"pieces", ps}};
}

PLFunction pl_from_json(const json& j) {
    std::vector<AffinePiece> ps;
    for (const auto& p : field(j, "pieces")) ps.push_back({vec_from_json(field(p, "a")), rat_from_json(field(p, "c"))});
    return PLFunction(std::move(ps));
}

json to_json(const ToricMetric& phi) {
    return {{"polytope", to_json(phi.polytope())}, {"pieces", to_json(phi.f())["pieces"]}};
}

ToricMetric metric_from_json(const json& j) {
    return ToricMetric(polytope_from_json(field(j, "polytope")), pl_from_json(j));
}

json to_json(const ToricPair& pair) {
    json b = json::array();
    for (const auto& d : pair.boundary()) b.push_back({{"normal", to_json(d.normal)}, {"coeff", to_json(d.coeff)}});
    return {{"polytope", to_json(pair.polytope())}, {"boundary", b}};
}

ToricPair pair_from_json(const json& j) {
    std::vector<BoundaryDivisor> b;
    if (j.contains("boundary"))
        for (const auto& d : j.at("boundary"))
            b.push_back({vec_from_json(field(d, "normal")), rat_from_json(field(d, "coeff"))});
    return ToricPair(polytope_from_json(field(j, "polytope")), b);
}

json to_json(const PPMeasure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({{"location", to_json(a.location)}, {"mass", to_json(a.mass)}});
    json pieces = json::array();
    for (const auto& p : mu.pieces())
        pieces.push_back({{"left", to_json(p.left)}, {"right", to_json(p.right)}, {"density", to_json(p.density.coeffs())}});
    return {{"atoms", atoms}, {"pieces", pieces}};
}

json to_json(const ComponentData& c) {
    return {{"a", to_json(c.piece.a)}, {"c", to_json(c.piece.c)},       {"b", c.b},
            {"valuation", c.valuation.str()}, {"mass", to_json(c.mass)}, {"A", to_json(c.A)},
            {"phi_value", to_json(c.phi_value)}};
}

json to_json(const FunctionalReport& r) {
    json j = {{"V", to_json(r.V)},
              {"Sbar", to_json(r.Sbar)},
              {"lambda_max", to_json(r.lambda_max)},
              {"lambda_min", to_json(r.lambda_min)},
              {"E", to_json(r.E)},
              {"I", to_json(r.I)},
              {"J", to_json(r.J)},
              {"L1", to_json(r.l1)},
              {"L2_squared", to_json(r.l2_squared)},
              {"Linf", to_json(r.linf)},
              {"F0", to_json(r.F0)},
              {"F1", to_json(r.F1)},
              {"DF", to_json(r.DF)},
              {"DF_boundary", to_json(r.DF_boundary)},
              {"H", to_json(r.H)},
              {"R", to_json(r.R)},
              {"M", to_json(r.M)},
              {"error_term", to_json(r.error_term)},
              {"N0", r.N0}};
    if (r.ding_L) {
        j["ding_L"] = to_json(*r.ding_L);
        j["ding_D"] = to_json(*r.ding_D);
    }
    return j;
}

FunctionalReport report_from_json(const json& j) {
    FunctionalReport r;
    auto get = [&](const char* k) { return rat_from_json(field(j, k)); };
    r.V = get("V");
    r.Sbar = get("Sbar");
    r.lambda_max = get("lambda_max");
    r.lambda_min = get("lambda_min");
    r.E = get("E");
    r.I = get("I");
    r.J = get("J");
    r.l1 = get("L1");
    r.l2_squared = get("L2_squared");
    r.linf = get("Linf");
    r.F0 = get("F0");
    r.F1 = get("F1");
    r.DF = get("DF");
    r.DF_boundary = get("DF_boundary");
    r.H = get("H");
    r.R = get("R");
    r.M = get("M");
    r.error_term = get("error_term");
    r.N0 = field(j, "N0").get<std::int64_t>();
    if (j.contains("ding_L")) {
        r.ding_L = get("ding_L");
        r.ding_D = get("ding_D");
    }
    return r;
}

json report_document(const ToricMetric& phi, const ToricPair& pair, const FunctionalReport& r) {
    return {{"metric", to_json(phi)}, {"pair", to_json(pair)}, {"report", to_json(r)}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace kstab
