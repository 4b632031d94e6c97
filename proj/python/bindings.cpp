#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kstab/catalog.hpp"
#include "kstab/errors.hpp"
#include "kstab/io.hpp"
#include "kstab/verify.hpp"

namespace py = pybind11;
using namespace kstab;

namespace {

ToricMetric metric_arg(const std::string& text) {
    if (!text.empty() && text.front() == '{') {
        auto j = json::parse(text);
        return metric_from_json(j.contains("metric") ? j.at("metric") : j);
    }
    return metric_by_name(text);
}

ToricPair pair_arg(const std::string& text, const LatticePolytope& P) {
    if (!text.empty() && text.front() == '{') return pair_from_json(json::parse(text));
    return pair_by_name(P, text);
}

std::string report(const std::string& metric, const std::string& pair) {
    auto phi = metric_arg(metric);
    auto p = pair_arg(pair, phi.polytope());
    return report_document(phi, p, compute_report(phi, p)).dump();
}

std::string dh(const std::string& metric) { return to_json(metric_arg(metric).dh_exact()).dump(); }

std::string dh_csv(const std::string& metric) { return metric_arg(metric).dh_exact().to_csv(); }

std::string components(const std::string& metric, const std::string& pair) {
    auto phi = metric_arg(metric);
    json out = json::array();
    for (const auto& c : phi.components(pair_arg(pair, phi.polytope()))) out.push_back(to_json(c));
    return out.dump();
}

std::string weights(const std::string& metric, std::int64_t m) {
    auto g = metric_arg(metric).filtration_of(m);
    json out = json::array();
    for (const auto& [w, mult] : g.entries()) out.push_back({w, mult});
    return out.dump();
}

std::vector<std::string> rees(const std::string& ideal, std::size_t nvars) {
    std::vector<std::string> out;
    for (const auto& v : rees_valuations(MonomialIdeal::parse(ideal, nvars))) out.push_back(v.str());
    return out;
}

bool in_closure(const std::vector<std::int64_t>& u, const std::string& ideal, std::int64_t m) {
    auto a = MonomialIdeal::parse(ideal, u.size());
    return in_integral_closure(u, a, m);
}

std::string classify(const std::string& polytope, const std::string& pair) {
    auto P = polytope_by_name(polytope);
    auto p = pair_arg(pair, P);
    json j;
    j["class"] = to_string(classify_pair(p));
    if (auto d = find_destabilizer(p)) {
        j["destabilizer"] = to_json(*d);
        j["destabilizer_H"] = to_json(entropy(*d, p));
    }
    return j.dump();
}

std::string scan(const std::string& polytope, const std::string& pair, const std::string& delta,
                 std::size_t samples, std::uint64_t seed) {
    auto P = polytope_by_name(polytope);
    auto s = coercivity_scan(pair_arg(pair, P), Rat::parse(delta), samples, seed);
    auto opt = [](const std::optional<Rat>& r) { return r ? to_json(*r) : json(nullptr); };
    auto list = [](const std::vector<ScanViolation>& v) {
        json out = json::array();
        for (const auto& x : v) out.push_back({{"sample", x.sample}, {"inequality", x.inequality}, {"detail", x.detail}});
        return out;
    };
    json j;
    j["nontrivial"] = s.nontrivial;
    j["min_M_over_J"] = opt(s.min_M_over_J);
    j["min_H_over_I"] = opt(s.min_H_over_I);
    j["min_H_over_J"] = opt(s.min_H_over_J);
    j["min_D_over_J"] = opt(s.min_D_over_J);
    j["violations"] = list(s.violations);
    j["delta_violations"] = list(s.delta_violations);
    return j.dump();
}

std::vector<std::tuple<std::string, bool, std::string>> verify(const std::string& suite, std::uint64_t seed,
                                                               std::optional<std::size_t> cases) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : run_suite(suite, SuiteOptions{seed, cases})) out.emplace_back(r.name, r.passed, r.detail);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact toric non-Archimedean functionals (JSON in, JSON out)";
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ArithmeticError);

    m.def("report", &report, py::arg("metric"), py::arg("pair") = "trivial",
          "Report document for a catalog name or metric JSON, with a pair name or JSON.");
    m.def("dh", &dh, py::arg("metric"));
    m.def("dh_csv", &dh_csv, py::arg("metric"));
    m.def("components", &components, py::arg("metric"), py::arg("pair") = "trivial");
    m.def("weights", &weights, py::arg("metric"), py::arg("m"));
    m.def("rees", &rees, py::arg("ideal"), py::arg("nvars") = 0);
    m.def("in_integral_closure", &in_closure, py::arg("u"), py::arg("ideal"), py::arg("m") = 1);
    m.def("classify", &classify, py::arg("polytope"), py::arg("pair"));
    m.def("scan", &scan, py::arg("polytope"), py::arg("pair") = "trivial", py::arg("delta") = "0",
          py::arg("samples") = 100, py::arg("seed") = 42);
    m.def("verify", &verify, py::arg("suite"), py::arg("seed") = 42, py::arg("cases") = py::none());
    m.def("metric", [](const std::string& name) { return to_json(metric_by_name(name)).dump(); }, py::arg("name"));
}
