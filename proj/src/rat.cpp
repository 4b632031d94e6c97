#include "kstab/rat.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    s = trim(s);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) throw InputError("malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InputError("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

}  // namespace

Rat::Rat(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    auto t = trim(text);
    auto slash = t.find('/');
    if (slash == std::string_view::npos) return Rat(parse_integer(t, text));
    mpz_class p = parse_integer(t.substr(0, slash), text);
    mpz_class q = parse_integer(t.substr(slash + 1), text);
    if (q == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rat(mpq_class(p, q));
}

std::string Rat::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rat::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

mpz_class Rat::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return r;
}

std::int64_t Rat::to_int64() const {
    if (!is_integer()) throw InputError("expected an integer, got " + str());
    return kstab::to_int64(v_.get_num());
}

Rat Rat::pow(unsigned k) const {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), k);
    return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw InputError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

mpz_class lcm_of_denominators(const std::vector<Rat>& values) {
    mpz_class l = 1;
    for (const auto& v : values) {
        mpz_class d = v.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

std::int64_t to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw InputError("integer out of 64-bit range: " + z.get_str());
    return z.get_si();
}

Rat dot(const Vec& a, const Vec& b) {
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator*(const Rat& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

Vec primitive_integer(const Vec& v) {
    mpz_class l = lcm_of_denominators(v);
    mpz_class g = 0;
    std::vector<mpz_class> ints;
    ints.reserve(v.size());
    for (const auto& x : v) {
        mpq_class scaled = x.raw() * l;
        ints.push_back(scaled.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    if (g == 0) throw InputError("primitive vector of zero vector");
    Vec out;
    out.reserve(v.size());
    for (auto& z : ints) out.emplace_back(mpz_class(z / g));
    return out;
}

bool VecLess::operator()(const Vec& a, const Vec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace kstab

std::size_t std::hash<kstab::Rat>::operator()(const kstab::Rat& r) const noexcept {
    std::size_t h = mpz_get_ui(r.raw().get_num_mpz_t()) * 1000003u;
    return h ^ mpz_get_ui(r.raw().get_den_mpz_t());
}
