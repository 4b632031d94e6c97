#include "kstab/pair.hpp"

#include <algorithm>

#include "kstab/errors.hpp"
#include "kstab/linalg.hpp"

namespace kstab {

ToricPair::ToricPair(LatticePolytope P, const std::vector<BoundaryDivisor>& boundary)
    : P_(std::move(P)), coeffs_(P_.facets().size()) {
    if (!P_.full_dimensional()) throw InputError("pair needs a full-dimensional polytope");
    for (const auto& b : boundary) {
        auto it = std::find_if(P_.facets().begin(), P_.facets().end(),
                               [&](const Facet& f) { return f.normal == b.normal; });
        if (it == P_.facets().end())
            throw InputError("boundary normal " + to_string(b.normal) + " is not a ray of the fan");
        coeffs_[static_cast<std::size_t>(it - P_.facets().begin())] = b.coeff;
    }
}

std::vector<BoundaryDivisor> ToricPair::boundary() const {
    std::vector<BoundaryDivisor> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) out.push_back({ray(i), coeffs_[i]});
    return out;
}

bool ToricPair::simplicial() const {
    for (const auto& v : P_.vertices())
        if (static_cast<int>(P_.facets_through(v).size()) != P_.dim()) return false;
    return true;
}

bool ToricPair::smooth() const {
    if (!simplicial()) return false;
    for (const auto& v : P_.vertices()) {
        linalg::Mat m;
        for (auto f : P_.facets_through(v)) m.push_back(ray(f));
        if (abs(linalg::det(std::move(m))) != Rat(1)) return false;
    }
    return true;
}

std::optional<Vec> ToricPair::anticanonical_shift() const {
    // Need h_rho + <u_rho, t> = b_rho - 1 for every ray.
    const std::size_t n = static_cast<std::size_t>(P_.dim());
    linalg::Mat rows;
    Vec rhs;
    for (std::size_t i = 0; i < num_rays(); ++i) {
        rows.push_back(ray(i));
        rhs.push_back(coeffs_[i] - Rat(1) - P_.facets()[i].offset);
    }
    // Solve on n independent rows, then check the rest.
    linalg::Mat sq;
    Vec srhs;
    for (std::size_t i = 0; i < rows.size() && sq.size() < n; ++i) {
        sq.push_back(rows[i]);
        if (linalg::rank(sq) != static_cast<int>(sq.size())) {
            sq.pop_back();
        } else {
            srhs.push_back(rhs[i]);
        }
    }
    auto t = linalg::solve(sq, srhs);
    if (!t) return std::nullopt;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (dot(rows[i], *t) != rhs[i]) return std::nullopt;
    return t;
}

std::optional<Rat> ToricPair::canonical_proportionality() const {
    // K_(X,B) = -sum (1 - b_rho) D_rho; L = -sum h_rho D_rho. K = lambda L modulo
    // principal divisors sum <u_rho, m> D_rho.
    const std::size_t n = static_cast<std::size_t>(P_.dim());
    // Unknowns (lambda, m_1..m_n): lambda * (-h_rho) + <u_rho, m> = b_rho - 1.
    linalg::Mat rows;
    Vec rhs;
    for (std::size_t i = 0; i < num_rays(); ++i) {
        Vec r{-P_.facets()[i].offset};
        for (const auto& x : ray(i)) r.push_back(x);
        rows.push_back(std::move(r));
        rhs.push_back(coeffs_[i] - Rat(1));
    }
    linalg::Mat sq;
    Vec srhs;
    for (std::size_t i = 0; i < rows.size() && sq.size() < n + 1; ++i) {
        sq.push_back(rows[i]);
        if (linalg::rank(sq) != static_cast<int>(sq.size())) {
            sq.pop_back();
        } else {
            srhs.push_back(rhs[i]);
        }
    }
    if (sq.size() < n + 1) return std::nullopt;
    auto x = linalg::solve(sq, srhs);
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (dot(rows[i], *x) != rhs[i]) return std::nullopt;
    return (*x)[0];
}

Rat toric_log_discrepancy(const ToricPair& pair, const Vec& w) {
    const auto& P = pair.polytope();
    if (w.size() != static_cast<std::size_t>(P.dim())) throw InputError("weight has the wrong dimension");
    if (std::all_of(w.begin(), w.end(), [](const Rat& x) { return x.is_zero(); })) return Rat(0);
    // w lies in the cone of the vertex minimizing <w, .>.
    const Vec* best = &P.vertices().front();
    for (const auto& v : P.vertices())
        if (dot(w, v) < dot(w, *best)) best = &v;
    auto fs = P.facets_through(*best);
    if (static_cast<int>(fs.size()) != P.dim())
        throw InputError("log discrepancy needs a simplicial fan");
    const std::size_t n = fs.size();
    linalg::Mat m(n, Vec(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m[i][j] = pair.ray(fs[j])[i];
    auto t = linalg::solve(std::move(m), w);
    if (!t) throw InvariantViolation("fan cone", "rays of a vertex cone are dependent");
    Rat A;
    for (std::size_t j = 0; j < n; ++j) {
        if ((*t)[j].sign() < 0) throw InvariantViolation("fan cone", "weight outside its cone");
        A += (*t)[j] * (Rat(1) - pair.coeff(fs[j]));
    }
    return A;
}

PairClass classify_pair(const ToricPair& pair) {
    if (!pair.simplicial()) throw InputError("classification needs a simplicial fan");
    bool klt = true;
    for (const auto& b : pair.coeffs()) {
        Rat a = Rat(1) - b;
        if (a.sign() < 0) return PairClass::not_lc;
        if (a.is_zero()) klt = false;
    }
    return klt ? PairClass::klt : PairClass::lc_not_klt;
}

std::string to_string(PairClass c) {
    switch (c) {
        case PairClass::klt: return "klt";
        case PairClass::lc_not_klt: return "lc-not-klt";
        case PairClass::not_lc: return "not-lc";
    }
    return "?";
}

}  // namespace kstab
