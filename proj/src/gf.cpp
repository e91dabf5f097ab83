#include "fiblrc/gf.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace fiblrc::gf {

namespace {

using Digits = std::vector<std::uint64_t>;

// Dense F_p polynomials used only while choosing the modulus.
void trim(Digits& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result;
}

Digits fp_mod(Digits a, const Digits& m, std::uint64_t p) {
    trim(a);
    const std::uint64_t lead_inv = inv_mod_p(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

Digits fp_mulmod(const Digits& a, const Digits& b, const Digits& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Digits prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return fp_mod(std::move(prod), m, p);
}

Digits fp_gcd(Digits a, Digits b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Digits r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin's test: f of degree m is irreducible iff X^(p^m) = X mod f and
// gcd(X^(p^(m/l)) - X, f) = 1 for every prime l | m.
bool fp_irreducible(const Digits& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 1) return true;
    auto frob = [&](const Digits& a) {
        Digits result{1}, base = a;
        std::uint64_t e = p;
        while (e) {
            if (e & 1) result = fp_mulmod(result, base, f, p);
            base = fp_mulmod(base, base, f, p);
            e >>= 1;
        }
        return result;
    };
    std::vector<Digits> powers;  // X^(p^i) mod f for i = 0..m
    powers.push_back(fp_mod(Digits{0, 1}, f, p));
    for (std::size_t i = 1; i <= m; ++i) powers.push_back(frob(powers.back()));
    if (powers[m] != powers[0]) return false;
    for (std::size_t l = 2; l <= m; ++l) {
        if (m % l != 0 || !is_prime(l)) continue;
        Digits d = powers[m / l];
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = (d[1] + p - 1) % p;
        trim(d);
        Digits g = fp_gcd(f, d, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr make_field(std::uint32_t p, unsigned m_total,
                    std::optional<std::vector<std::uint32_t>> modulus) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
    if (m_total == 0) throw ReducibleModulus("extension degree must be positive");
    std::uint64_t order = 1;
    for (unsigned i = 0; i < m_total; ++i) {
        order *= p;
        if (order >= (std::uint64_t{1} << 32))
            throw FieldTooLarge("field order does not fit in 32 bits");
    }

    auto field = std::shared_ptr<Field>(new Field());
    field->p_ = p;
    field->m_ = m_total;
    field->order_ = order;

    if (modulus) {
        Digits f(modulus->begin(), modulus->end());
        if (f.size() != m_total + 1 || f.back() != 1)
            throw ReducibleModulus("modulus must be monic of degree " + std::to_string(m_total));
        for (auto c : f)
            if (c >= p) throw ReducibleModulus("modulus coefficient out of range");
        if (!fp_irreducible(f, p)) throw ReducibleModulus("modulus is reducible over F_p");
        field->modulus_ = *modulus;
    } else {
        // Candidates in lexicographic order with c0 the most significant digit.
        Digits f(m_total + 1, 0);
        f[m_total] = 1;
        for (std::uint64_t n = 0;; ++n) {
            std::uint64_t rest = n;
            for (unsigned i = m_total; i-- > 0;) {
                f[i] = rest % p;
                rest /= p;
            }
            if (fp_irreducible(f, p)) break;
        }
        field->modulus_.assign(f.begin(), f.end());
    }

    // Generator: least element in the same ordering with full order.
    const std::uint64_t group = order - 1;
    const auto factors = prime_factors(group);
    auto reverse_digits = [&](std::uint64_t n) {
        Raw v = 0;
        for (unsigned i = 0; i < m_total; ++i) {
            v = v * p + static_cast<Raw>(n % p);
            n /= p;
        }
        return v;
    };
    for (std::uint64_t n = 1; n < order; ++n) {
        const Raw g = reverse_digits(n);
        if (g == 0) continue;
        bool full = true;
        for (auto l : factors) {
            if (field->pow(g, group / l) == 1) {
                full = false;
                break;
            }
        }
        if (full) {
            field->generator_ = g;
            break;
        }
    }

    if (order <= kTableLimit) {
        field->exp_.resize(2 * group);
        field->log_.assign(order, 0);
        Raw x = 1;
        for (std::uint64_t k = 0; k < group; ++k) {
            field->exp_[k] = x;
            field->log_[x] = static_cast<std::uint32_t>(k);
            x = field->poly_mul(x, field->generator_);
        }
        for (std::uint64_t k = group; k < 2 * group; ++k) field->exp_[k] = field->exp_[k - group];
        field->neg_.resize(order);
        for (Raw a = 0; a < order; ++a) {
            Raw v = 0, scale = 1;
            Raw rest = a;
            for (unsigned i = 0; i < m_total; ++i) {
                const Raw c = rest % p;
                rest /= p;
                v += ((p - c) % p) * scale;
                scale *= p;
            }
            field->neg_[a] = v;
        }
        if (m_total > 1 && order <= 1024) {
            field->add_.resize(order * order);
            for (Raw a = 0; a < order; ++a)
                for (Raw b = 0; b < order; ++b)
                    field->add_[a * order + b] = static_cast<std::uint16_t>(field->digit_add(a, b));
        }
    }
    return field;
}

Raw Field::digit_add(Raw a, Raw b) const {
    if (m_ == 1) {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Raw>(s >= p_ ? s - p_ : s);
    }
    Raw v = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
        Raw c = a % p_ + b % p_;
        if (c >= p_) c -= p_;
        v += c * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return v;
}

Raw Field::poly_mul(Raw a, Raw b) const {
    if (m_ == 1) return static_cast<Raw>(std::uint64_t{a} * b % p_);
    const auto da = coefficients(a), db = coefficients(b);
    std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
    }
    for (std::size_t k = prod.size(); k-- > m_;) {
        const std::uint64_t c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < m_; ++i)
            prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    Raw v = 0;
    for (unsigned i = m_; i-- > 0;) v = v * p_ + static_cast<Raw>(prod[i]);
    return v;
}

Raw Field::add(Raw a, Raw b) const {
    if (!add_.empty()) return add_[a * order_ + b];
    return digit_add(a, b);
}

Raw Field::neg(Raw a) const {
    if (!neg_.empty()) return neg_[a];
    Raw v = 0, scale = 1;
    for (unsigned i = 0; i < m_; ++i) {
        const Raw c = a % p_;
        a /= p_;
        v += ((p_ - c) % p_) * scale;
        scale *= p_;
    }
    return v;
}

Raw Field::sub(Raw a, Raw b) const { return add(a, neg(b)); }

Raw Field::mul(Raw a, Raw b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return poly_mul(a, b);
}

Raw Field::inv(Raw a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (!exp_.empty()) {
        const std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : (order_ - 1) - l];
    }
    return pow(a, order_ - 2);
}

Raw Field::div(Raw a, Raw b) const { return mul(a, inv(b)); }

Raw Field::pow(Raw a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (!exp_.empty()) {
        const std::uint64_t group = order_ - 1;
        return exp_[(std::uint64_t{log_[a]} * (e % group)) % group];
    }
    Raw result = 1, base = a;
    while (e) {
        if (e & 1) result = poly_mul(result, base);
        base = poly_mul(base, base);
        e >>= 1;
    }
    return result;
}

Raw Field::pow_signed(Raw a, std::int64_t e) const {
    if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
    return pow(inv(a), static_cast<std::uint64_t>(-e));
}

Raw Field::from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Raw>(r);
}

std::vector<std::uint32_t> Field::coefficients(Raw a) const {
    std::vector<std::uint32_t> c(m_);
    for (unsigned i = 0; i < m_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Raw Field::from_coefficients(const std::vector<std::uint32_t>& c) const {
    Raw v = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), m_); i-- > 0;) v = v * p_ + (c[i] % p_);
    return v;
}

std::optional<std::uint32_t> Field::log(Raw a) const {
    if (a == 0) return std::nullopt;
    if (exp_.empty()) throw FieldTooLarge("discrete log needs a table-backed field");
    return log_[a];
}

Raw Field::exp(std::uint64_t k) const {
    if (!exp_.empty()) return exp_[k % (order_ - 1)];
    return pow(generator_, k);
}

std::uint32_t Field::canonical_key(Raw a) const {
    if (a == 0) return 0;
    return *log(a) + 1;
}

Raw Field::from_canonical_key(std::uint32_t key) const {
    if (key == 0) return 0;
    return exp(key - 1);
}

bool Field::is_square(Raw a) const {
    if (a == 0 || p_ == 2) return true;
    return pow(a, (order_ - 1) / 2) == 1;
}

std::uint64_t Field::element_order(Raw a) const {
    if (a == 0) throw DivisionByZero("zero has no multiplicative order");
    std::uint64_t ord = order_ - 1;
    for (auto l : prime_factors(order_ - 1)) {
        while (ord % l == 0 && pow(a, ord / l) == 1) ord /= l;
    }
    return ord;
}

Raw Field::nth_root_of_unity(std::uint64_t n) const {
    if (n == 0 || (order_ - 1) % n != 0)
        throw OrderNotDivisible(std::to_string(n) + " does not divide " + std::to_string(order_ - 1));
    return pow(generator_, (order_ - 1) / n);
}

bool Field::same_as(const Field& other) const {
    return this == &other || (p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_);
}

std::string Field::describe() const {
    std::ostringstream os;
    os << p_ << '^' << m_ << '/';
    for (std::size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    return os.str();
}

FieldPtr parse_field(std::string_view text) {
    auto parse_uint = [&](std::string_view s) {
        std::uint64_t v = 0;
        const auto* end = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (ec != std::errc() || ptr != end || s.empty())
            throw ParseError("bad integer '" + std::string(s) + "' in field spec");
        return v;
    };
    std::string_view head = text, tail;
    bool has_modulus = false;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        head = text.substr(0, slash);
        tail = text.substr(slash + 1);
        has_modulus = true;
    }
    std::uint64_t p = 0, m = 1;
    if (auto caret = head.find('^'); caret != std::string_view::npos) {
        p = parse_uint(head.substr(0, caret));
        m = parse_uint(head.substr(caret + 1));
    } else {
        p = parse_uint(head);
    }
    if (p > 0xffffffffu || m == 0 || m > 64) throw ParseError("field spec out of range");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (has_modulus) {
        std::vector<std::uint32_t> c;
        while (true) {
            const auto comma = tail.find(',');
            c.push_back(static_cast<std::uint32_t>(parse_uint(tail.substr(0, comma))));
            if (comma == std::string_view::npos) break;
            tail = tail.substr(comma + 1);
        }
        modulus = std::move(c);
    }
    return make_field(static_cast<std::uint32_t>(p), static_cast<unsigned>(m), modulus);
}

Element::Element(FieldPtr f, Raw v) : field_(std::move(f)), v_(v) {
    if (!field_ || !field_->valid(v_)) throw ParseError("element out of range for field");
}

void Element::check(const Element& o) const {
    if (field_ != o.field_ && !(field_ && o.field_ && field_->same_as(*o.field_)))
        throw FieldMismatch("operands belong to different fields");
}

Element Element::operator+(const Element& o) const {
    check(o);
    return {field_, field_->add(v_, o.v_)};
}

Element Element::operator-(const Element& o) const {
    check(o);
    return {field_, field_->sub(v_, o.v_)};
}

Element Element::operator*(const Element& o) const {
    check(o);
    return {field_, field_->mul(v_, o.v_)};
}

Element Element::operator/(const Element& o) const {
    check(o);
    return {field_, field_->div(v_, o.v_)};
}

Element Element::operator-() const { return {field_, field_->neg(v_)}; }
Element Element::inv() const { return {field_, field_->inv(v_)}; }
Element Element::pow(std::uint64_t e) const { return {field_, field_->pow(v_, e)}; }
bool Element::is_square() const { return field_->is_square(v_); }

bool Element::operator==(const Element& o) const {
    check(o);
    return v_ == o.v_;
}

}  // namespace fiblrc::gf
