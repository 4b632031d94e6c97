#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace kstab {

/// Exact rational number in canonical form (reduced, positive denominator).
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
    Rat(long num, long den);
    explicit Rat(const mpz_class& z) : v_(z) {}
    explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (optional sign, surrounding blanks ignored).
    static Rat parse(std::string_view text);

    std::string str() const;

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    mpz_class floor() const;
    mpz_class ceil() const;
    double to_double() const { return v_.get_d(); }
    /// Throws InputError if the value is not an integer fitting in int64.
    std::int64_t to_int64() const;

    Rat pow(unsigned k) const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

Rat abs(const Rat& r);
Rat min(const Rat& a, const Rat& b);
Rat max(const Rat& a, const Rat& b);

/// Least common multiple of the denominators (1 for an empty range).
mpz_class lcm_of_denominators(const std::vector<Rat>& values);

std::int64_t to_int64(const mpz_class& z);

using Vec = std::vector<Rat>;

Rat dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& s, const Vec& a);
std::string to_string(const Vec& v);

/// Scales a nonzero vector to the primitive integer vector on the same ray.
Vec primitive_integer(const Vec& v);

struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const;
};

}  // namespace kstab

template <>
struct std::hash<kstab::Rat> {
    std::size_t operator()(const kstab::Rat& r) const noexcept;
};
