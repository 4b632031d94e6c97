#include "kstab/unipoly.hpp"

#include <algorithm>
#include <set>

#include "kstab/errors.hpp"

namespace kstab {

UniPoly::UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(k)];
}

Rat UniPoly::operator()(const Rat& x) const {
    Rat acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rat> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(Rat(static_cast<long>(k)) * c_[k]);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::antiderivative() const {
    std::vector<Rat> a(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / Rat(static_cast<long>(k + 1));
    return UniPoly(std::move(a));
}

Rat UniPoly::integrate(const Rat& a, const Rat& b) const {
    UniPoly F = antiderivative();
    return F(b) - F(a);
}

UniPoly UniPoly::compose_affine(const Rat& alpha, const Rat& beta) const {
    UniPoly inner = affine(alpha, beta);
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * inner + constant(*it);
    return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
}

UniPoly operator*(const Rat& s, const UniPoly& a) {
    std::vector<Rat> r = a.c_;
    for (auto& x : r) x *= s;
    return UniPoly(std::move(r));
}

UniPoly UniPoly::pow(unsigned k) const {
    UniPoly r = constant(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string UniPoly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Rat& c = c_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        Rat mag = abs(c);
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        bool unit = mag == Rat(1);
        if (k == 0 || !unit) out += mag.str();
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    if (points.empty()) throw InputError("interpolate: no points");
    std::set<Rat> seen;
    for (const auto& [x, y] : points) {
        if (!seen.insert(x).second) throw InputError("interpolate: duplicate abscissa " + x.str());
    }
    // Newton divided differences.
    const std::size_t n = points.size();
    std::vector<Rat> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - j].first);
    UniPoly acc = UniPoly::constant(dd[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;)
        acc = acc * UniPoly::affine(1, -points[k].first) + UniPoly::constant(dd[k]);
    return acc;
}

EventualFit fit_eventual_polynomial(const std::map<std::int64_t, Rat>& samples, int degree_bound,
                                    std::int64_t step) {
    if (step <= 0) throw InputError("fit_eventual_polynomial: progression step must be positive");
    if (degree_bound < 0) throw InputError("fit_eventual_polynomial: negative degree bound");
    const std::size_t need = static_cast<std::size_t>(degree_bound) + 3;
    if (samples.size() < need)
        throw InputError("fit_eventual_polynomial: need at least " + std::to_string(need) + " samples");

    std::vector<std::pair<std::int64_t, Rat>> seq(samples.begin(), samples.end());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i].first % step != 0)
            throw InputError("fit_eventual_polynomial: sample m=" + std::to_string(seq[i].first) +
                             " is off the progression");
        if (i > 0 && seq[i].first - seq[i - 1].first != step)
            throw InputError("fit_eventual_polynomial: samples are not consecutive multiples");
    }

    const std::size_t fit_count = static_cast<std::size_t>(degree_bound) + 1;
    std::vector<std::pair<Rat, Rat>> tail;
    for (std::size_t i = seq.size() - fit_count; i < seq.size(); ++i)
        tail.emplace_back(Rat(seq[i].first), seq[i].second);
    UniPoly p = interpolate(tail);

    std::size_t check = seq.size() - fit_count - 1;
    if (p(Rat(seq[check].first)) != seq[check].second) {
        throw NotEventuallyPolynomial("not eventually polynomial on this progression (degree <= " +
                                      std::to_string(degree_bound) + ", step " +
                                      std::to_string(step) + ")");
    }
    std::size_t first = check;
    while (first > 0 && p(Rat(seq[first - 1].first)) == seq[first - 1].second) --first;
    return {std::move(p), seq[first].first};
}

}  // namespace kstab
