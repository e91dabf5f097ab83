#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fiblrc/gf.hpp"

namespace fiblrc::poly {

using gf::FieldPtr;
using gf::Raw;

// Dense univariate polynomial, ascending coefficients, no trailing zeros.
class UniPoly {
public:
    explicit UniPoly(FieldPtr f);
    UniPoly(FieldPtr f, std::vector<Raw> coeffs);

    static UniPoly constant(FieldPtr f, Raw c);
    static UniPoly monomial(FieldPtr f, Raw c, std::size_t deg);
    static UniPoly x(FieldPtr f);

    const FieldPtr& field() const { return field_; }
    const std::vector<Raw>& coeffs() const { return c_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    Raw coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    Raw leading() const { return c_.empty() ? 0 : c_.back(); }

    bool operator==(const UniPoly& o) const;
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

private:
    void trim();

    FieldPtr field_;
    std::vector<Raw> c_;
};

UniPoly p_add(const UniPoly& a, const UniPoly& b);
UniPoly p_sub(const UniPoly& a, const UniPoly& b);
UniPoly p_neg(const UniPoly& a);
UniPoly p_scale(const UniPoly& a, Raw c);
UniPoly p_mul(const UniPoly& a, const UniPoly& b);
std::pair<UniPoly, UniPoly> p_divmod(const UniPoly& a, const UniPoly& b);
UniPoly p_mod(const UniPoly& a, const UniPoly& b);
UniPoly p_div(const UniPoly& a, const UniPoly& b);
UniPoly p_monic(const UniPoly& a);
// Monic gcd; gcd(0, 0) = 0.
UniPoly p_gcd(const UniPoly& a, const UniPoly& b);
UniPoly p_derivative(const UniPoly& a);
Raw p_eval(const UniPoly& a, Raw x);
UniPoly p_pow_mod(const UniPoly& base, std::uint64_t e, const UniPoly& mod);
// Substitute X -> X^k.
UniPoly p_inflate(const UniPoly& a, std::size_t k);

// X^Q mod f.
UniPoly frobenius_power_mod(const UniPoly& f, std::uint64_t q);
bool splits_completely_distinct(const UniPoly& f);
// Distinct roots in the base field in canonical element order.
std::vector<Raw> all_roots(const UniPoly& f);
bool is_squarefree(const UniPoly& f);

struct Factor {
    UniPoly poly;  // monic irreducible
    unsigned multiplicity;
};

// Complete factorization into monic irreducibles (odd characteristic),
// sorted by degree and then by coefficient keys. Nonzero input required.
std::vector<Factor> factor(const UniPoly& f);

// Lagrange interpolation through (nodes[i], values[i]); nodes distinct.
UniPoly interpolate(const FieldPtr& f, const std::vector<Raw>& nodes, const std::vector<Raw>& values);

}  // namespace fiblrc::poly
