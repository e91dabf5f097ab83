#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fiblrc/error.hpp"

namespace fiblrc::gf {

// Raw element encoding: the polynomial-basis coefficients c_0..c_{m-1}
// packed as the integer sum c_i * p^i. Zero is 0 and one is 1.
using Raw = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Fields with order up to this bound get log/antilog tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

class Field {
public:
    std::uint32_t p() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint64_t order() const { return order_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Raw generator() const { return generator_; }
    bool has_tables() const { return !exp_.empty(); }

    Raw add(Raw a, Raw b) const;
    Raw sub(Raw a, Raw b) const;
    Raw neg(Raw a) const;
    Raw mul(Raw a, Raw b) const;
    Raw inv(Raw a) const;
    Raw div(Raw a, Raw b) const;
    Raw pow(Raw a, std::uint64_t e) const;
    // Signed exponent; negative powers of zero throw DivisionByZero.
    Raw pow_signed(Raw a, std::int64_t e) const;

    // Image of an integer in the prime subfield.
    Raw from_int(std::int64_t v) const;
    std::vector<std::uint32_t> coefficients(Raw a) const;
    Raw from_coefficients(const std::vector<std::uint32_t>& c) const;

    // Discrete log to the field generator; nullopt for zero.
    // Requires a table-backed field.
    std::optional<std::uint32_t> log(Raw a) const;
    Raw exp(std::uint64_t k) const;

    // Total order used wherever elements must be sorted: zero first, then
    // by discrete log. Key is 0 for zero and log+1 otherwise.
    std::uint32_t canonical_key(Raw a) const;
    Raw from_canonical_key(std::uint32_t key) const;

    bool is_square(Raw a) const;
    std::uint64_t element_order(Raw a) const;
    Raw nth_root_of_unity(std::uint64_t n) const;

    bool same_as(const Field& other) const;
    bool valid(Raw a) const { return a < order_; }

    // "p^m/c0,c1,...,1"
    std::string describe() const;

    // Direct table access for hot loops; only meaningful with tables.
    const std::vector<std::uint32_t>& log_table() const { return log_; }
    const std::vector<Raw>& exp_table() const { return exp_; }

private:
    friend FieldPtr make_field(std::uint32_t, unsigned,
                               std::optional<std::vector<std::uint32_t>>);
    Field() = default;

    Raw poly_mul(Raw a, Raw b) const;
    Raw digit_add(Raw a, Raw b) const;

    std::uint32_t p_ = 0;
    unsigned m_ = 0;
    std::uint64_t order_ = 0;
    std::vector<std::uint32_t> modulus_;
    Raw generator_ = 0;
    std::vector<std::uint32_t> log_;  // log_[0] unused
    std::vector<Raw> exp_;            // length 2(order-1)
    std::vector<std::uint16_t> add_;  // order x order, small fields only
    std::vector<Raw> neg_;
};

FieldPtr make_field(std::uint32_t p, unsigned m_total,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

// Accepts "p", "p^m" or "p^m/c0,...,1".
FieldPtr parse_field(std::string_view text);

bool is_prime(std::uint64_t n);

// Checked element handle. All binary operations require both operands to
// come from the same field.
class Element {
public:
    Element() = default;
    Element(FieldPtr f, Raw v);

    const FieldPtr& field() const { return field_; }
    Raw raw() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator/(const Element& o) const;
    Element operator-() const;
    Element inv() const;
    Element pow(std::uint64_t e) const;
    bool is_square() const;

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

private:
    void check(const Element& o) const;

    FieldPtr field_;
    Raw v_ = 0;
};

}  // namespace fiblrc::gf
