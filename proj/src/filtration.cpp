#include "kstab/filtration.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

GradedWeights::GradedWeights(std::int64_t level,
                             std::vector<std::pair<std::int64_t, std::int64_t>> entries)
    : level_(level) {
    std::sort(entries.begin(), entries.end());
    for (const auto& [lam, mult] : entries) {
        if (mult < 0) throw InputError("negative multiplicity in graded weights");
        if (mult == 0) continue;
        if (!entries_.empty() && entries_.back().first == lam) {
            entries_.back().second += mult;
        } else {
            entries_.emplace_back(lam, mult);
        }
    }
}

std::int64_t GradedWeights::N() const {
    std::int64_t n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

Rat GradedWeights::power_sum(unsigned k) const {
    mpz_class total = 0;
    for (const auto& [lam, mult] : entries_) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), mpz_class(static_cast<long>(lam)).get_mpz_t(), k);
        total += p * mpz_class(static_cast<long>(mult));
    }
    return Rat(total);
}

std::vector<std::pair<std::int64_t, std::int64_t>> successive_minima(const GradedWeights& gw) {
    if (gw.entries().empty()) throw InputError("successive minima of an empty filtration");
    return {gw.entries().rbegin(), gw.entries().rend()};
}

PPMeasure scaled_weight_measure(const GradedWeights& gw) {
    if (gw.level() < 1) throw InputError("weight measure needs level m >= 1");
    const Rat n(static_cast<long>(gw.N()));
    const Rat m(static_cast<long>(gw.level()));
    std::vector<Atom> atoms;
    for (const auto& [lam, mult] : gw.entries())
        atoms.push_back({Rat(static_cast<long>(lam)) / m, Rat(static_cast<long>(mult)) / n});
    return PPMeasure(std::move(atoms), {});
}

namespace {

bool leq(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace

std::vector<Exponent> minimal_exponents(std::vector<Exponent> exps) {
    std::sort(exps.begin(), exps.end());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<Exponent> out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < exps.size() && !dominated; ++j)
            dominated = j != i && leq(exps[j], exps[i]);
        if (!dominated) out.push_back(exps[i]);
    }
    return out;
}

MonomialIdeal::MonomialIdeal(std::size_t nvars, std::vector<Exponent> generators) : nvars_(nvars) {
    if (generators.empty()) throw InputError("the zero ideal is not supported");
    for (const auto& g : generators) {
        if (g.size() != nvars) throw InputError("monomial exponent has the wrong length");
        for (auto e : g)
            if (e < 0) throw InputError("negative exponent in monomial ideal");
    }
    gens_ = minimal_exponents(std::move(generators));
}

MonomialIdeal MonomialIdeal::parse(std::string_view text, std::size_t nvars) {
    static const std::string names = "xyzt";
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> monos;
    std::size_t used = 0;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&]() -> std::int64_t {
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) throw InputError("expected an exponent in ideal '" + std::string(text) + "'");
        return std::stoll(std::string(text.substr(start, i - start)));
    };
    for (;;) {
        std::vector<std::pair<std::size_t, std::int64_t>> mono;
        skip();
        if (i < text.size() && text[i] == '1') {
            ++i;
        } else {
            for (;;) {
                skip();
                if (i >= text.size()) break;
                auto pos = names.find(text[i]);
                if (pos == std::string::npos) break;
                ++i;
                std::int64_t e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    e = read_int();
                }
                mono.emplace_back(pos, e);
                used = std::max(used, pos + 1);
                skip();
                if (i < text.size() && text[i] == '*') ++i;
            }
            if (mono.empty()) throw InputError("empty monomial in ideal '" + std::string(text) + "'");
        }
        monos.push_back(std::move(mono));
        skip();
        if (i >= text.size()) break;
        if (text[i] != ',') throw InputError("unexpected character in ideal '" + std::string(text) + "'");
        ++i;
    }
    if (nvars == 0) nvars = std::max<std::size_t>(used, 1);
    if (used > nvars) throw InputError("ideal uses more variables than requested");
    std::vector<Exponent> gens;
    for (const auto& mono : monos) {
        Exponent e(nvars, 0);
        for (auto [v, k] : mono) e[v] += k;
        gens.push_back(std::move(e));
    }
    return MonomialIdeal(nvars, std::move(gens));
}

bool MonomialIdeal::is_unit() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const Exponent& g) {
        return std::all_of(g.begin(), g.end(), [](std::int64_t e) { return e == 0; });
    });
}

bool MonomialIdeal::contains(const Exponent& u) const {
    return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent& g) { return leq(g, u); });
}

std::string MonomialIdeal::str() const {
    static const char* names[] = {"x", "y", "z", "t"};
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (k) os << ",";
        bool any = false;
        for (std::size_t v = 0; v < nvars_; ++v) {
            if (gens_[k][v] == 0) continue;
            if (any) os << "*";
            os << (v < 4 ? names[v] : "x" + std::to_string(v));
            if (gens_[k][v] > 1) os << "^" << gens_[k][v];
            any = true;
        }
        if (!any) os << "1";
    }
    os << ")";
    return os.str();
}

Rat MonomialValuation::operator()(const Exponent& u) const {
    if (u.size() != w.size()) throw InputError("valuation and monomial differ in length");
    Rat s;
    for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * Rat(static_cast<long>(u[i]));
    return s;
}

Rat MonomialValuation::operator()(const MonomialIdeal& a) const {
    Rat best = (*this)(a.generators().front());
    for (const auto& g : a.generators()) best = min(best, (*this)(g));
    return best;
}

bool MonomialValuation::is_trivial() const {
    return std::all_of(w.begin(), w.end(), [](const Rat& x) { return x.is_zero(); });
}

std::string MonomialValuation::str() const {
    if (is_trivial()) return "v_triv";
    mpz_class d = lcm_of_denominators(w);
    std::ostringstream os;
    std::size_t support = 0, last = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero()) ++support, last = i;
    if (support == 1 && w[last] * Rat(d) == Rat(1) && last < 4) {
        os << "ord_" << "xyzt"[last];
        if (d != 1) os << "/" << d.get_str();
        return os.str();
    }
    os << "val_(";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << (w[i] * Rat(d)).str();
    os << ")";
    if (d != 1) os << "/" << d.get_str();
    return os.str();
}

Rat gauss_extension_eval(const MonomialValuation& v, const std::vector<LaurentTerm>& terms) {
    if (terms.empty()) throw InputError("Gauss extension of the zero function");
    Rat best = v(terms.front().u) + terms.front().lambda;
    for (const auto& t : terms) best = min(best, v(t.u) + t.lambda);
    return best;
}

namespace {

Vec to_vec(const Exponent& e) {
    Vec v;
    for (auto x : e) v.push_back(Rat(static_cast<long>(x)));
    return v;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

std::vector<NewtonFacet> newton_facets(const MonomialIdeal& a) {
    const std::size_t n = a.nvars();
    std::vector<Vec> gens;
    for (const auto& g : a.generators()) gens.push_back(to_vec(g));
    std::set<Vec, VecLess> seen;
    std::vector<NewtonFacet> out;
    for (std::size_t s = 1; s <= std::min(n, gens.size()); ++s) {
        for_each_subset(gens.size(), s, [&](const std::vector<std::size_t>& S) {
            for_each_subset(n, n - s, [&](const std::vector<std::size_t>& T) {
                linalg::Mat rows;
                for (std::size_t j = 1; j < S.size(); ++j) rows.push_back(gens[S[j]] - gens[S[0]]);
                for (auto i : T) {
                    Vec e(n);
                    e[i] = 1;
                    rows.push_back(std::move(e));
                }
                auto ker = linalg::kernel(rows, n);
                if (ker.size() != 1) return;
                Vec w = ker.front();
                bool pos = std::all_of(w.begin(), w.end(), [](const Rat& x) { return x.sign() >= 0; });
                bool neg = std::all_of(w.begin(), w.end(), [](const Rat& x) { return x.sign() <= 0; });
                if (!pos && !neg) return;
                if (!pos) w = Rat(-1) * w;
                w = primitive_integer(w);
                if (seen.count(w)) return;
                const Rat h = dot(w, gens[S[0]]);
                linalg::Mat span;
                for (const auto& g : gens) {
                    Rat val = dot(w, g);
                    if (val < h) return;
                    if (val == h) span.push_back(g - gens[S[0]]);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (!w[i].is_zero()) continue;
                    Vec e(n);
                    e[i] = 1;
                    span.push_back(std::move(e));
                }
                if (linalg::rank(span) != static_cast<int>(n) - 1) return;
                seen.insert(w);
                out.push_back({w, h});
            });
        });
    }
    std::sort(out.begin(), out.end(), [](const NewtonFacet& p, const NewtonFacet& q) {
        return VecLess{}(p.w, q.w);
    });
    return out;
}

std::vector<MonomialValuation> rees_valuations(const MonomialIdeal& a) {
    std::vector<MonomialValuation> out;
    for (const auto& f : newton_facets(a))
        if (f.h.sign() > 0) out.push_back({Rat(1) / f.h * f.w});
    std::sort(out.begin(), out.end(), [](const MonomialValuation& p, const MonomialValuation& q) {
        return VecLess{}(p.w, q.w);
    });
    return out;
}

bool in_integral_closure(const Exponent& u, const MonomialIdeal& a, std::int64_t m) {
    const Rat mm(static_cast<long>(m));
    for (const auto& v : rees_valuations(a))
        if (v(u) < mm) return false;
    return true;
}

std::optional<std::int64_t> closure_certificate(const Exponent& u, const MonomialIdeal& a,
                                                std::int64_t m) {
    if (m <= 0) return 1;
    const std::size_t n = a.nvars();
    const auto& gens = a.generators();
    const std::size_t k = gens.size();
    // Columns: generator weights lambda_g, then slacks s_i; rows: coordinates, then sum.
    auto column = [&](std::size_t c) {
        Vec col(n + 1);
        if (c < k) {
            for (std::size_t i = 0; i < n; ++i) col[i] = Rat(static_cast<long>(gens[c][i]));
            col[n] = 1;
        } else {
            col[c - k] = 1;
        }
        return col;
    };
    Vec rhs = to_vec(u);
    rhs.push_back(Rat(static_cast<long>(m)));
    std::optional<Vec> lambda;
    for_each_subset(k + n, n + 1, [&](const std::vector<std::size_t>& basis) {
        if (lambda) return;
        linalg::Mat M(n + 1, Vec(n + 1));
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Vec col = column(basis[j]);
            for (std::size_t i = 0; i <= n; ++i) M[i][j] = col[i];
        }
        auto x = linalg::solve(std::move(M), rhs);
        if (!x) return;
        for (const auto& xi : *x)
            if (xi.sign() < 0) return;
        Vec lam(k);
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (basis[j] < k) lam[basis[j]] = (*x)[j];
        lambda = std::move(lam);
    });
    if (!lambda) return std::nullopt;
    const mpz_class d = lcm_of_denominators(*lambda);
    // u^d >= product of generators with integer exponents d*lambda_g summing to d*m.
    std::vector<mpz_class> prod(n, 0);
    mpz_class count = 0;
    for (std::size_t g = 0; g < k; ++g) {
        mpz_class e = ((*lambda)[g] * Rat(d)).num();
        count += e;
        for (std::size_t i = 0; i < n; ++i) prod[i] += e * static_cast<long>(gens[g][i]);
    }
    if (count != d * static_cast<long>(m))
        throw InvariantViolation("closure certificate", "exponents do not sum to d*m");
    for (std::size_t i = 0; i < n; ++i)
        if (prod[i] > d * static_cast<long>(u[i]))
            throw InvariantViolation("closure certificate", "product does not divide u^d");
    return to_int64(d);
}

bool power_membership(const Exponent& u, const MonomialIdeal& a, std::int64_t m, std::int64_t max_d) {
    const std::size_t n = a.nvars();
    for (std::int64_t d = 1; d <= max_d; ++d) {
        Exponent cap(n);
        for (std::size_t i = 0; i < n; ++i) cap[i] = d * u[i];
        std::vector<Exponent> layer{Exponent(n, 0)};
        for (std::int64_t j = 0; j < d * m && !layer.empty(); ++j) {
            std::vector<Exponent> next;
            for (const auto& s : layer)
                for (const auto& g : a.generators()) {
                    Exponent t(n);
                    for (std::size_t i = 0; i < n; ++i) t[i] = s[i] + g[i];
                    if (leq(t, cap)) next.push_back(std::move(t));
                }
            layer = minimal_exponents(std::move(next));
        }
        if (!layer.empty()) return true;
    }
    return false;
}

std::vector<DeformationValuation> rees_of_deformation(const MonomialIdeal& a) {
    const std::size_t n = a.nvars();
    std::vector<Exponent> gens;
    for (auto g : a.generators()) {
        g.push_back(0);
        gens.push_back(std::move(g));
    }
    Exponent t(n + 1, 0);
    t[n] = 1;
    gens.push_back(t);
    MonomialIdeal ext(n + 1, std::move(gens));

    std::vector<DeformationValuation> out;
    DeformationValuation triv;
    triv.ord.w = to_vec(t);
    triv.b = 1;
    triv.restricted.w = Vec(n);
    out.push_back(std::move(triv));
    for (const auto& f : newton_facets(ext)) {
        if (f.h.sign() <= 0) continue;
        DeformationValuation dv;
        dv.ord.w = f.w;
        if (!f.w[n].is_integer() || f.w[n].sign() <= 0)
            throw InvariantViolation("deformation Rees valuation", "ord(t) must be a positive integer");
        dv.b = f.w[n].to_int64();
        Vec r(f.w.begin(), f.w.end() - 1);
        dv.restricted.w = Rat(1) / f.w[n] * r;
        out.push_back(std::move(dv));
    }
    return out;
}

}  // namespace kstab
