#include "kstab/catalog.hpp"

#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::pair<std::string, std::string> head_args(const std::string& name) {
    auto pos = name.find(':');
    if (pos == std::string::npos) return {name, ""};
    return {name.substr(0, pos), name.substr(pos + 1)};
}

int parse_int(const std::string& s) {
    Rat r = Rat::parse(s);
    if (!r.is_integer()) throw InputError("expected an integer, got '" + s + "'");
    return static_cast<int>(r.to_int64());
}

}  // namespace

LatticePolytope segment(const Rat& a, const Rat& b) { return LatticePolytope::from_points({{a}, {b}}); }

LatticePolytope simplex(int n) {
    if (n < 1) throw InputError("simplex dimension must be >= 1");
    std::vector<Vec> pts{Vec(static_cast<std::size_t>(n))};
    for (int i = 0; i < n; ++i) {
        Vec e(static_cast<std::size_t>(n));
        e[static_cast<std::size_t>(i)] = 1;
        pts.push_back(std::move(e));
    }
    return LatticePolytope::from_points(std::move(pts));
}

LatticePolytope unit_square() { return LatticePolytope::from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

LatticePolytope anticanonical_p2() { return LatticePolytope::from_points({{-1, -1}, {2, -1}, {-1, 2}}); }

LatticePolytope polytope_by_name(const std::string& name) {
    auto [head, args] = head_args(name);
    if (head == "segment") return segment(Rat(0), args.empty() ? Rat(1) : Rat::parse(args));
    if (head == "simplex") return simplex(args.empty() ? 2 : parse_int(args));
    if (head == "square") {
        if (args.empty()) return unit_square();
        Rat L = Rat::parse(args);
        return LatticePolytope::from_points({{0, 0}, {L, 0}, {0, L}, {L, L}});
    }
    if (head == "p2-anticanonical") return anticanonical_p2();
    if (head == "p1xp1-anticanonical") return LatticePolytope::from_points({{-1, -1}, {1, -1}, {-1, 1}, {1, 1}});
    throw InputError("unknown polytope '" + name + "'");
}

ToricMetric metric_by_name(const std::string& name) {
    auto [head, args] = head_args(name);
    if (head == "p1-onePS") {
        Rat d = args.empty() ? Rat(1) : Rat::parse(args);
        return ToricMetric::from_one_ps(segment(0, 1), {d}, Rat(0));
    }
    if (head == "pn-blowup") {
        auto parts = split(args, ',');
        int n = parts.size() > 0 && !parts[0].empty() ? parse_int(parts[0]) : 1;
        Rat eps = parts.size() > 1 ? Rat::parse(parts[1]) : Rat(1, 2);
        return ToricMetric::deformation_to_normal_cone(simplex(n), Vec(static_cast<std::size_t>(n)), eps);
    }
    if (head == "trivial") return ToricMetric::trivial(segment(0, 1), args.empty() ? Rat(0) : Rat::parse(args));
    throw InputError("unknown example '" + name + "'");
}

ToricPair pair_by_name(const LatticePolytope& P, const std::string& name) {
    auto [head, args] = head_args(name);
    if (head == "trivial" || head.empty()) return ToricPair(P, {});
    if (head == "line") {
        Vec e(static_cast<std::size_t>(P.dim()));
        e[0] = 1;
        return ToricPair(P, {{e, Rat::parse(args)}});
    }
    if (head == "coeffs") {
        auto parts = split(args, ',');
        if (parts.size() != P.facets().size())
            throw InputError("coeffs: expected " + std::to_string(P.facets().size()) + " values");
        std::vector<BoundaryDivisor> b;
        for (std::size_t i = 0; i < parts.size(); ++i) b.push_back({P.facets()[i].normal, Rat::parse(parts[i])});
        return ToricPair(P, b);
    }
    throw InputError("unknown pair '" + name + "'");
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
        x = eng_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 of the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const std::vector<std::string>& random_polytope_names() {
    static const std::vector<std::string> names = {"segment:1", "simplex:2", "square", "segment:2",
                                                   "p2-anticanonical", "p1xp1-anticanonical"};
    return names;
}

ToricMetric random_metric(Rng& rng, const LatticePolytope& P, std::int64_t max_n0) {
    const std::size_t n = static_cast<std::size_t>(P.dim());
    for (;;) {
        const auto k = rng.uniform(2, 4);
        std::vector<AffinePiece> ps;
        for (std::int64_t i = 0; i < k; ++i) {
            AffinePiece p;
            for (std::size_t j = 0; j < n; ++j) p.a.push_back(Rat(rng.uniform(-3, 3), rng.uniform(1, 2)));
            p.c = Rat(rng.uniform(-2, 2), rng.uniform(1, 2));
            ps.push_back(std::move(p));
        }
        ToricMetric phi(P, PLFunction(std::move(ps)));
        if (phi.N0() <= max_n0) return phi;
    }
}

RandomCase random_case(std::uint64_t seed, std::uint64_t index) {
    const auto& names = random_polytope_names();
    RandomCase rc;
    rc.seed = case_seed(seed, index);
    rc.polytope_name = names[index % names.size()];
    rc.anticanonical = rc.polytope_name == "segment:2" || rc.polytope_name.find("anticanonical") != std::string::npos;
    Rng rng(rc.seed);
    LatticePolytope P = polytope_by_name(rc.polytope_name);
    std::vector<BoundaryDivisor> b;
    if (!rc.anticanonical)
        for (const auto& f : P.facets()) b.push_back({f.normal, Rat(rng.uniform(0, 2), 2)});
    rc.pair = ToricPair(P, b);
    rc.phi = random_metric(rng, P);
    return rc;
}

MonomialIdeal random_ideal(Rng& rng) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto k = rng.uniform(1, 4);
    std::vector<Exponent> gens;
    for (std::int64_t i = 0; i < k; ++i) {
        Exponent e(n);
        for (auto& x : e) x = rng.uniform(0, 6);
        gens.push_back(std::move(e));
    }
    return MonomialIdeal(n, std::move(gens));
}

}  // namespace kstab
