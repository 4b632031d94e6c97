#include <filesystem>
#include <functional>
#include <set>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/functionals.hpp"
#include "kstab/io.hpp"
#include "kstab/verify.hpp"

using namespace kstab;

namespace {

struct MetricSource {
    std::string example;
    std::string n = "1", eps = "1/2", d = "1", c = "0";
    std::string metric;
    std::string pair = "trivial";
};

void add_metric_flags(CLI::App* cmd, MetricSource& src) {
    cmd->add_option("--example", src.example, "pn-blowup, p1-onePS or trivial");
    cmd->add_option("--n", src.n, "dimension for pn-blowup");
    cmd->add_option("--eps", src.eps, "epsilon for pn-blowup");
    cmd->add_option("--d", src.d, "weight for p1-onePS");
    cmd->add_option("--c", src.c, "constant for trivial");
    cmd->add_option("--metric", src.metric, "catalog name (p1-onePS:d, pn-blowup:n,eps, trivial:c) or JSON file");
}

bool is_file(const std::string& s) { return !s.empty() && std::filesystem::is_regular_file(s); }

ToricMetric load_metric(const MetricSource& src, std::optional<json>& doc) {
    if (!src.example.empty() && !src.metric.empty()) throw InputError("use either --example or --metric");
    if (!src.example.empty()) {
        if (src.example == "pn-blowup") return metric_by_name("pn-blowup:" + src.n + "," + src.eps);
        if (src.example == "p1-onePS") return metric_by_name("p1-onePS:" + src.d);
        if (src.example == "trivial") return metric_by_name("trivial:" + src.c);
        throw InputError("unknown example '" + src.example + "'");
    }
    if (src.metric.empty()) throw InputError("no metric given (--example or --metric)");
    if (is_file(src.metric)) {
        json j = read_json_file(src.metric);
        try {
            if (j.contains("metric")) {
                doc = j;
                return metric_from_json(j.at("metric"));
            }
            return metric_from_json(j);
        } catch (const json::exception& e) {
            throw InputError(src.metric + ": " + e.what());
        }
    }
    return metric_by_name(src.metric);
}

ToricPair load_pair(const std::string& name, const LatticePolytope& P, const std::optional<json>& doc,
                    bool pair_given) {
    if (!pair_given && doc && doc->contains("pair")) return pair_from_json(doc->at("pair"));
    if (is_file(name)) {
        try {
            json j = read_json_file(name);
            return pair_from_json(j.contains("pair") ? j.at("pair") : j);
        } catch (const json::exception& e) {
            throw InputError(name + ": " + e.what());
        }
    }
    return pair_by_name(P, name);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << text;
}

std::string report_text(const FunctionalReport& r) {
    std::ostringstream os;
    auto j = to_json(r);
    for (const auto& [k, v] : j.items()) {
        if (v.is_null()) continue;
        os << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    return os.str();
}

int cmd_report(const MetricSource& src, bool pair_given, bool as_json, const std::string& out) {
    std::optional<json> doc;
    auto phi = load_metric(src, doc);
    auto pair = load_pair(src.pair, phi.polytope(), doc, pair_given);
    auto r = compute_report(phi, pair);
    if (as_json) emit(report_document(phi, pair, r).dump(2) + "\n", out);
    else emit(report_text(r), out);
    return 0;
}

int cmd_dh(const MetricSource& src, const std::string& csv, bool as_json) {
    std::optional<json> doc;
    auto phi = load_metric(src, doc);
    auto mu = phi.dh_exact();
    if (as_json) std::cout << to_json(mu).dump(2) << "\n";
    else std::cout << mu << "\n";
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw InputError("cannot write " + csv);
        f << mu.to_csv();
    }
    return 0;
}

int cmd_rees(const std::string& text, std::size_t nvars, bool deform) {
    auto a = MonomialIdeal::parse(text, nvars);
    std::cout << "ideal: " << a.str() << "\n";
    auto rees = rees_valuations(a);
    std::cout << "Rees valuations:";
    if (rees.empty()) std::cout << " none";
    for (const auto& v : rees) std::cout << " " << v.str();
    std::cout << "\n";

    // Minimal monomials of the integral closure of a^m, m = 1, 2.
    std::int64_t top = 0;
    for (const auto& g : a.generators())
        for (auto e : g) top = std::max(top, e);
    for (std::int64_t m = 1; m <= 2; ++m) {
        std::vector<Exponent> members;
        Exponent u(a.nvars(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == u.size()) {
                if (in_integral_closure(u, a, m)) members.push_back(u);
                return;
            }
            for (std::int64_t x = 0; x <= m * top; ++x) {
                u[j] = x;
                rec(j + 1);
            }
        };
        rec(0);
        MonomialIdeal closure(a.nvars(), members.empty() ? std::vector<Exponent>{} : members);
        std::cout << "closure of a^" << m << ": " << closure.str() << "\n";
    }
    if (deform) {
        auto def = rees_of_deformation(a);
        std::cout << "deformation to the normal cone:\n";
        std::set<std::string> lhs, rhs;
        for (const auto& dv : def) {
            std::cout << "  weight (";
            for (std::size_t i = 0; i < dv.ord.w.size(); ++i)
                std::cout << (i == 0 ? "" : i + 1 == dv.ord.w.size() ? "; t: " : ",") << dv.ord.w[i];
            std::cout << ") b=" << dv.b << " restricts to " << dv.restricted.str() << "\n";
            if (!dv.restricted.is_trivial()) lhs.insert(dv.restricted.str());
        }
        for (const auto& v : rees) rhs.insert(v.str());
        const bool ok = lhs == rhs && !def.empty() && def.front().restricted.is_trivial();
        std::cout << "restriction check: " << (ok ? "pass" : "FAIL") << "\n";
        if (!ok) throw InvariantViolation("deformation restriction", "restricted valuations differ from Rees valuations");
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> cases) {
    auto results = run_suite(suite, SuiteOptions{seed, cases});
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
    }
    std::cout << (ok ? "all passed" : "FAILURES") << " (" << results.size() << " checks, seed " << seed << ")\n";
    return ok ? 0 : 1;
}

int cmd_classify(const std::string& polytope, const std::string& pair_name, bool as_json) {
    auto P = polytope_by_name(polytope);
    auto pair = load_pair(pair_name, P, std::nullopt, true);
    auto cls = classify_pair(pair);
    auto dest = find_destabilizer(pair);
    auto lam = pair.canonical_proportionality();
    if (as_json) {
        json j;
        j["pair"] = to_json(pair);
        j["class"] = to_string(cls);
        if (lam) j["K_proportionality"] = to_json(*lam);
        if (dest) {
            j["destabilizer"] = to_json(*dest);
            j["destabilizer_H"] = to_json(entropy(*dest, pair));
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "pair: " << to_json(pair).dump() << "\n";
    std::cout << "class: " << to_string(cls) << "\n";
    if (lam) {
        std::cout << "K_(X,B) = " << *lam << " L\n";
        if (lam->sign() > 0 && cls != PairClass::not_lc)
            std::cout << "coercivity: M >= " << *lam / Rat(P.dim()) << " J\n";
    }
    if (dest) {
        std::cout << "destabilizer: " << to_json(*dest).dump() << "\n";
        std::cout << "destabilizer H = " << entropy(*dest, pair) << "\n";
    } else {
        std::cout << "destabilizer: none\n";
    }
    return 0;
}

int cmd_scan(const std::string& polytope, const std::string& pair_name, const std::string& delta,
             std::size_t samples, std::uint64_t seed, bool as_json) {
    auto P = polytope_by_name(polytope);
    auto pair = load_pair(pair_name, P, std::nullopt, true);
    auto scan = coercivity_scan(pair, Rat::parse(delta), samples, seed);
    auto opt = [](const std::optional<Rat>& r) { return r ? to_json(*r) : json(nullptr); };
    auto list = [](const std::vector<ScanViolation>& v) {
        json out = json::array();
        for (const auto& x : v) out.push_back({{"sample", x.sample}, {"inequality", x.inequality}, {"detail", x.detail}});
        return out;
    };
    if (as_json) {
        json j;
        j["delta"] = to_json(scan.delta);
        j["samples"] = scan.samples;
        j["nontrivial"] = scan.nontrivial;
        j["min_M_over_J"] = opt(scan.min_M_over_J);
        j["min_H_over_I"] = opt(scan.min_H_over_I);
        j["min_H_over_J"] = opt(scan.min_H_over_J);
        j["min_D_over_J"] = opt(scan.min_D_over_J);
        j["violations"] = list(scan.violations);
        j["delta_violations"] = list(scan.delta_violations);
        std::cout << j.dump(2) << "\n";
    } else {
        auto show = [](const std::optional<Rat>& r) { return r ? r->str() : std::string("n/a"); };
        std::cout << "samples: " << scan.samples << " (" << scan.nontrivial << " nontrivial), seed " << seed << "\n"
                  << "min M/J = " << show(scan.min_M_over_J) << "\n"
                  << "min H/I = " << show(scan.min_H_over_I) << "\n"
                  << "min H/J = " << show(scan.min_H_over_J) << "\n"
                  << "min D/J = " << show(scan.min_D_over_J) << "\n"
                  << "violations: " << scan.violations.size() << "\n";
        for (const auto& v : scan.violations)
            std::cout << "  sample " << v.sample << ": " << v.inequality << " (" << v.detail << ")\n";
        std::cout << "delta = " << scan.delta << " hypothesis failures: " << scan.delta_violations.size() << "\n";
        for (const auto& v : scan.delta_violations)
            std::cout << "  sample " << v.sample << ": " << v.inequality << " (" << v.detail << ")\n";
    }
    if (!scan.violations.empty())
        throw InvariantViolation(scan.violations.front().inequality,
                                 "sample " + std::to_string(scan.violations.front().sample));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact non-Archimedean functionals of toric test configurations"};
    app.require_subcommand(1);

    MetricSource rsrc;
    bool r_json = false;
    std::string r_out;
    auto* report = app.add_subcommand("report", "Full functional report for a metric and a pair");
    add_metric_flags(report, rsrc);
    auto* r_pair = report->add_option("--pair", rsrc.pair, "trivial, line:b, coeffs:b1,... or JSON file");
    report->add_flag("--json", r_json, "machine-readable output");
    report->add_option("--out", r_out, "write to a file instead of stdout");

    MetricSource dsrc;
    std::string d_csv;
    bool d_json = false;
    auto* dh = app.add_subcommand("dh", "Duistermaat-Heckman measure");
    add_metric_flags(dh, dsrc);
    dh->add_option("--plot-csv", d_csv, "write the measure as CSV");
    dh->add_flag("--json", d_json, "machine-readable output");

    std::string ideal;
    std::size_t nvars = 0;
    bool deform = false;
    auto* rees = app.add_subcommand("rees", "Rees valuations of a monomial ideal");
    rees->add_option("--ideal", ideal, "generators, e.g. \"x^2,y\"")->required();
    rees->add_option("--nvars", nvars, "number of variables (default: as used)");
    rees->add_flag("--deform", deform, "also compute the deformation to the normal cone");

    std::string suite = "all";
    std::uint64_t seed = 42;
    std::optional<std::size_t> cases;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "measures, filtration, testconfig, functionals, inequalities, asymptotics, all");
    verify->add_option("--seed", seed, "seed for the randomized checks");
    verify->add_option("--cases", cases, "override the number of random cases");

    std::string c_polytope = "simplex:2", c_pair = "trivial";
    bool c_json = false;
    auto* classify = app.add_subcommand("classify", "Classify a toric pair and search for a destabilizer");
    classify->add_option("--polytope", c_polytope, "catalog polytope");
    classify->add_option("--pair", c_pair, "trivial, line:b, coeffs:b1,... or JSON file");
    classify->add_flag("--json", c_json, "machine-readable output");

    std::string s_polytope = "simplex:2", s_pair = "trivial", s_delta = "0";
    std::size_t s_samples = 100;
    std::uint64_t s_seed = 42;
    bool s_json = false;
    auto* scan = app.add_subcommand("scan", "Coercivity scan over random metrics");
    scan->add_option("--polytope", s_polytope, "catalog polytope");
    scan->add_option("--pair", s_pair, "trivial, line:b, coeffs:b1,... or JSON file");
    scan->add_option("--delta", s_delta, "hypothesised delta in M >= delta J and H >= delta I");
    scan->add_option("--samples", s_samples, "number of random metrics");
    scan->add_option("--seed", s_seed, "seed");
    scan->add_flag("--json", s_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*report) return cmd_report(rsrc, r_pair->count() > 0, r_json, r_out);
        if (*dh) return cmd_dh(dsrc, d_csv, d_json);
        if (*rees) return cmd_rees(ideal, nvars, deform);
        if (*verify) return cmd_verify(suite, seed, cases);
        if (*classify) return cmd_classify(c_polytope, c_pair, c_json);
        if (*scan) return cmd_scan(s_polytope, s_pair, s_delta, s_samples, s_seed, s_json);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violated: " << e.identity() << " (" << e.what() << ")\n";
        return 3;
    } catch (const NotEventuallyPolynomial& e) {
        std::cerr << "invariant violated: eventual polynomiality (" << e.what() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
