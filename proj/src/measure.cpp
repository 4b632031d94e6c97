#include "kstab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

PPMeasure::PPMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    canonicalize();
}

PPMeasure PPMeasure::dirac(const Rat& at, const Rat& mass) { return PPMeasure({{at, mass}}, {}); }

PPMeasure PPMeasure::uniform(const Rat& a, const Rat& b) {
    if (!(a < b)) throw InputError("uniform measure needs a < b");
    return PPMeasure({}, {{a, b, UniPoly::constant(Rat(1) / (b - a))}});
}

void PPMeasure::canonicalize() {
    std::map<Rat, Rat> merged;
    for (const auto& a : atoms_) merged[a.location] += a.mass;
    atoms_.clear();
    for (auto& [loc, mass] : merged)
        if (!mass.is_zero()) atoms_.push_back({loc, mass});

    std::set<Rat> cuts;
    for (const auto& p : pieces_) {
        if (p.left < p.right && !p.density.is_zero()) {
            cuts.insert(p.left);
            cuts.insert(p.right);
        }
    }
    std::vector<Rat> pts(cuts.begin(), cuts.end());
    std::vector<DensityPiece> out;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        UniPoly sum;
        for (const auto& p : pieces_) {
            if (p.left < p.right && p.left <= pts[i] && pts[i + 1] <= p.right) sum += p.density;
        }
        if (sum.is_zero()) continue;
        if (!out.empty() && out.back().right == pts[i] && out.back().density == sum) {
            out.back().right = pts[i + 1];
        } else {
            out.push_back({pts[i], pts[i + 1], std::move(sum)});
        }
    }
    pieces_ = std::move(out);
}

Rat PPMeasure::total_mass() const { return moment(0); }

Rat PPMeasure::moment(unsigned k) const {
    Rat s;
    for (const auto& a : atoms_) s += a.mass * a.location.pow(k);
    UniPoly mono = UniPoly::affine(1, 0).pow(k);
    for (const auto& p : pieces_) s += (mono * p.density).integrate(p.left, p.right);
    return s;
}

Rat PPMeasure::barycenter() const {
    Rat m = total_mass();
    if (m.is_zero()) throw InputError("barycenter of a measure with zero total mass");
    return moment(1) / m;
}

Rat PPMeasure::support_min() const {
    if (empty()) throw InputError("support of the zero measure");
    std::optional<Rat> lo;
    if (!atoms_.empty()) lo = atoms_.front().location;
    if (!pieces_.empty()) lo = lo ? min(*lo, pieces_.front().left) : pieces_.front().left;
    return *lo;
}

Rat PPMeasure::support_max() const {
    if (empty()) throw InputError("support of the zero measure");
    std::optional<Rat> hi;
    if (!atoms_.empty()) hi = atoms_.back().location;
    if (!pieces_.empty()) hi = hi ? max(*hi, pieces_.back().right) : pieces_.back().right;
    return *hi;
}

Rat PPMeasure::cdf_tail(const Rat& lambda) const {
    Rat s;
    for (const auto& a : atoms_)
        if (a.location >= lambda) s += a.mass;
    for (const auto& p : pieces_) {
        Rat lo = max(p.left, lambda);
        if (lo < p.right) s += p.density.integrate(lo, p.right);
    }
    return s;
}

Rat PPMeasure::cdf_tail_open(const Rat& lambda) const {
    Rat s = cdf_tail(lambda);
    for (const auto& a : atoms_)
        if (a.location == lambda) s -= a.mass;
    return s;
}

LpNorm PPMeasure::central_lp_norm(int p) const {
    if (p < 0) throw InputError("central_lp_norm: p must be a positive integer or 0 (infinity)");
    if (!is_probability()) throw InputError("central_lp_norm: not a probability measure");
    const Rat bar = barycenter();
    LpNorm out;
    out.p = p;
    if (p == 0) {
        Rat v = max(support_max() - bar, bar - support_min());
        out.power = v;
        out.value = v;
        return out;
    }
    const unsigned up = static_cast<unsigned>(p);
    Rat s;
    for (const auto& a : atoms_) s += a.mass * abs(a.location - bar).pow(up);
    UniPoly shifted = UniPoly::affine(1, -bar).pow(up);
    Rat sign_left = (p % 2 == 0) ? Rat(1) : Rat(-1);
    for (const auto& piece : pieces_) {
        UniPoly integrand = shifted * piece.density;
        if (piece.right <= bar) {
            s += sign_left * integrand.integrate(piece.left, piece.right);
        } else if (piece.left >= bar) {
            s += integrand.integrate(piece.left, piece.right);
        } else {
            s += sign_left * integrand.integrate(piece.left, bar);
            s += integrand.integrate(bar, piece.right);
        }
    }
    out.power = s;
    if (p == 1) out.value = s;
    return out;
}

PPMeasure PPMeasure::pushforward_affine(const Rat& alpha, const Rat& beta) const {
    if (alpha.is_zero()) throw InputError("pushforward_affine: alpha must be nonzero");
    std::vector<Atom> atoms;
    for (const auto& a : atoms_) atoms.push_back({alpha * a.location + beta, a.mass});
    std::vector<DensityPiece> pieces;
    const Rat inv = Rat(1) / alpha;
    const Rat jac = Rat(1) / abs(alpha);
    for (const auto& p : pieces_) {
        Rat l = alpha * p.left + beta;
        Rat r = alpha * p.right + beta;
        if (r < l) std::swap(l, r);
        pieces.push_back({l, r, jac * p.density.compose_affine(inv, -beta * inv)});
    }
    return PPMeasure(std::move(atoms), std::move(pieces));
}

std::vector<Rat> PPMeasure::breakpoints() const {
    std::set<Rat> s;
    for (const auto& a : atoms_) s.insert(a.location);
    for (const auto& p : pieces_) {
        s.insert(p.left);
        s.insert(p.right);
    }
    return {s.begin(), s.end()};
}

std::string PPMeasure::to_csv() const {
    std::ostringstream os;
    os << "kind,left_or_location,right_or_mass,coefficients\n";
    for (const auto& p : pieces_) {
        os << "piece," << p.left << "," << p.right;
        for (const auto& c : p.density.coeffs()) os << "," << c;
        os << "\n";
    }
    for (const auto& a : atoms_) os << "atom," << a.location << "," << a.mass << "\n";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const PPMeasure& mu) {
    bool first = true;
    for (const auto& p : mu.pieces()) {
        os << (first ? "" : " + ") << "(" << p.density.str("t") << ")dt on [" << p.left << ","
           << p.right << ")";
        first = false;
    }
    for (const auto& a : mu.atoms()) {
        os << (first ? "" : " + ") << a.mass << "*delta(" << a.location << ")";
        first = false;
    }
    if (first) os << "0";
    return os;
}

namespace {

// True iff ((g1^(1/n) + g2^(1/n)) / 2)^n <= g, all arguments nonnegative.
bool midpoint_root_inequality(const Rat& g1, const Rat& g2, const Rat& g, int n) {
    if (n == 1) return (g1 + g2) / Rat(2) <= g;
    if (n == 2) {
        // (g1 + g2 + 2 sqrt(g1 g2)) / 4 <= g  <=>  2 sqrt(g1 g2) <= 4g - g1 - g2.
        Rat rhs = Rat(4) * g - g1 - g2;
        if (rhs.sign() < 0) return false;
        return Rat(4) * g1 * g2 <= rhs * rhs;
    }
    // Higher dimensions: long double with a relative slack far below any
    // genuine violation produced by rational data of moderate height.
    long double r1 = std::pow(static_cast<long double>(g1.to_double()), 1.0L / n);
    long double r2 = std::pow(static_cast<long double>(g2.to_double()), 1.0L / n);
    long double r = std::pow(static_cast<long double>(g.to_double()), 1.0L / n);
    return (r1 + r2) / 2 <= r * (1 + 1e-12L) + 1e-15L;
}

}  // namespace

ConcavityCheck check_tail_root_concavity(const PPMeasure& mu, int n, int refine) {
    ConcavityCheck out;
    if (mu.empty()) return out;
    const Rat lo = mu.support_min();
    const Rat hi = mu.support_max();
    if (!(lo < hi)) return out;
    std::set<Rat> grid;
    for (const auto& b : mu.breakpoints())
        if (lo <= b && b <= hi) grid.insert(b);
    std::vector<Rat> base(grid.begin(), grid.end());
    for (std::size_t i = 0; i + 1 < base.size(); ++i)
        for (int k = 1; k < refine; ++k)
            grid.insert(base[i] + (base[i + 1] - base[i]) * Rat(k, refine));
    // Open interval: stay strictly inside (lo, hi); the tail at lo itself is 1 by convention.
    std::vector<Rat> pts;
    for (const auto& x : grid)
        if (lo < x && x < hi) pts.push_back(x);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Rat mid = (pts[i] + pts[i + 1]) / Rat(2);
        if (!midpoint_root_inequality(mu.cdf_tail(pts[i]), mu.cdf_tail(pts[i + 1]), mu.cdf_tail(mid),
                                      n)) {
            out.holds = false;
            out.witness = mid;
            return out;
        }
    }
    return out;
}

}  // namespace kstab
