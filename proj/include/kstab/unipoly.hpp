#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kstab/rat.hpp"

namespace kstab {

/// Univariate polynomial with exact rational coefficients, stored lowest degree first.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs);
    static UniPoly constant(const Rat& c) { return UniPoly({c}); }
    /// The affine polynomial alpha * x + beta.
    static UniPoly affine(const Rat& alpha, const Rat& beta) { return UniPoly({beta, alpha}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    /// Coefficient of x^k (zero beyond the degree).
    Rat coeff(int k) const;
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    Rat operator()(const Rat& x) const;

    UniPoly derivative() const;
    /// Antiderivative with zero constant term.
    UniPoly antiderivative() const;
    Rat integrate(const Rat& a, const Rat& b) const;
    /// p(alpha * x + beta).
    UniPoly compose_affine(const Rat& alpha, const Rat& beta) const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rat& s, const UniPoly& a);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    UniPoly pow(unsigned k) const;

    /// Human-readable form in the variable name `var`, e.g. "-1/8*m^2 - 1/4*m".
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rat> c_;
};

/// Lagrange interpolation through points with distinct abscissae.
UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& points);

struct EventualFit {
    UniPoly poly;
    /// First sampled index from which every later sample agrees with `poly`.
    std::int64_t stable_from = 0;
};

/// Fits a polynomial of degree <= degree_bound to samples taken along the
/// progression m in step*Z. The candidate is interpolated through the last
/// degree_bound + 1 samples and must also match the sample before them.
EventualFit fit_eventual_polynomial(const std::map<std::int64_t, Rat>& samples, int degree_bound,
                                    std::int64_t step);

}  // namespace kstab
