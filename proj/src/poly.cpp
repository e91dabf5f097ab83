#include "fiblrc/poly.hpp"

#include <algorithm>
#include <random>

namespace fiblrc::poly {

namespace {

void check_same(const UniPoly& a, const UniPoly& b) {
    if (a.field() != b.field() && !a.field()->same_as(*b.field()))
        throw FieldMismatch("polynomials over different fields");
}

std::uint32_t sort_key(const gf::Field& f, Raw a) { return f.has_tables() ? f.canonical_key(a) : a; }

bool factor_less(const Factor& a, const Factor& b) {
    if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
    const auto& f = *a.poly.field();
    for (std::size_t i = 0; i < a.poly.coeffs().size(); ++i) {
        const auto ka = sort_key(f, a.poly.coeff(i)), kb = sort_key(f, b.poly.coeff(i));
        if (ka != kb) return ka < kb;
    }
    return a.multiplicity < b.multiplicity;
}

// p-th root of a polynomial whose exponents are all multiples of p.
UniPoly pth_root(const UniPoly& f) {
    const auto& field = *f.field();
    const std::uint64_t root_exp = field.order() / field.p();
    std::vector<Raw> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += field.p()) c.push_back(field.pow(f.coeff(i), root_exp));
    return UniPoly(f.field(), std::move(c));
}

void squarefree_parts(const UniPoly& f, unsigned scale, std::vector<Factor>& out) {
    if (f.degree() <= 0) return;
    const UniPoly d = p_derivative(f);
    if (d.is_zero()) {
        squarefree_parts(pth_root(f), scale * f.field()->p(), out);
        return;
    }
    UniPoly c = p_gcd(f, d);
    UniPoly w = p_div(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        UniPoly y = p_gcd(w, c);
        UniPoly fac = p_div(w, y);
        if (fac.degree() > 0) out.push_back({p_monic(fac), i * scale});
        w = std::move(y);
        c = p_div(c, w);
        ++i;
    }
    if (c.degree() > 0) squarefree_parts(pth_root(c), scale * f.field()->p(), out);
}

void equal_degree_split(const UniPoly& g, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const auto& field = *g.field();
    if (field.p() == 2) throw Error("equal-degree factorization needs odd characteristic");
    const std::uint64_t q = field.order();
    while (true) {
        std::vector<Raw> c(static_cast<std::size_t>(g.degree()));
        for (auto& v : c) v = static_cast<Raw>(rng() % q);
        UniPoly a(g.field(), std::move(c));
        if (a.degree() <= 0) continue;
        // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
        UniPoly acc = a, conj = a;
        for (int i = 1; i < d; ++i) {
            conj = p_pow_mod(conj, q, g);
            acc = p_mod(p_mul(acc, conj), g);
        }
        UniPoly b = p_sub(p_pow_mod(acc, (q - 1) / 2, g), UniPoly::constant(g.field(), 1));
        UniPoly h = p_gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree_split(h, d, rng, out);
            equal_degree_split(p_div(g, h), d, rng, out);
            return;
        }
    }
}

}  // namespace

UniPoly::UniPoly(FieldPtr f) : field_(std::move(f)) {}

UniPoly::UniPoly(FieldPtr f, std::vector<Raw> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(FieldPtr f, Raw c) { return UniPoly(std::move(f), {c}); }

UniPoly UniPoly::monomial(FieldPtr f, Raw c, std::size_t deg) {
    std::vector<Raw> v(deg + 1, 0);
    v[deg] = c;
    return UniPoly(std::move(f), std::move(v));
}

UniPoly UniPoly::x(FieldPtr f) { return monomial(std::move(f), 1, 1); }

bool UniPoly::operator==(const UniPoly& o) const {
    check_same(*this, o);
    return c_ == o.c_;
}

UniPoly p_add(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    const auto& f = *a.field();
    std::vector<Raw> c(std::max(a.coeffs().size(), b.coeffs().size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
    return UniPoly(a.field(), std::move(c));
}

UniPoly p_neg(const UniPoly& a) {
    std::vector<Raw> c(a.coeffs());
    for (auto& v : c) v = a.field()->neg(v);
    return UniPoly(a.field(), std::move(c));
}

UniPoly p_sub(const UniPoly& a, const UniPoly& b) { return p_add(a, p_neg(b)); }

UniPoly p_scale(const UniPoly& a, Raw s) {
    std::vector<Raw> c(a.coeffs());
    for (auto& v : c) v = a.field()->mul(v, s);
    return UniPoly(a.field(), std::move(c));
}

UniPoly p_mul(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return UniPoly(a.field());
    const auto& f = *a.field();
    std::vector<Raw> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (!a.coeff(i)) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.coeff(i), b.coeff(j)));
    }
    return UniPoly(a.field(), std::move(c));
}

std::pair<UniPoly, UniPoly> p_divmod(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    if (b.is_zero()) throw DivisionByZeroPoly("division by the zero polynomial");
    const auto& f = *a.field();
    std::vector<Raw> r(a.coeffs());
    if (a.degree() < b.degree()) return {UniPoly(a.field()), a};
    std::vector<Raw> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
    const Raw lead_inv = f.inv(b.leading());
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = r.size(); k-- > db;) {
        if (!r[k]) continue;
        const Raw c = f.mul(r[k], lead_inv);
        q[k - db] = c;
        for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = f.sub(r[k - db + i], f.mul(c, b.coeff(i)));
    }
    return {UniPoly(a.field(), std::move(q)), UniPoly(a.field(), std::move(r))};
}

UniPoly p_mod(const UniPoly& a, const UniPoly& b) { return p_divmod(a, b).second; }
UniPoly p_div(const UniPoly& a, const UniPoly& b) { return p_divmod(a, b).first; }

UniPoly p_monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    return p_scale(a, a.field()->inv(a.leading()));
}

UniPoly p_gcd(const UniPoly& a, const UniPoly& b) {
    check_same(a, b);
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = p_mod(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return p_monic(x);
}

UniPoly p_derivative(const UniPoly& a) {
    const auto& f = *a.field();
    if (a.degree() <= 0) return UniPoly(a.field());
    std::vector<Raw> c(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = f.mul(f.from_int(static_cast<std::int64_t>(i % f.p())), a.coeff(i));
    return UniPoly(a.field(), std::move(c));
}

Raw p_eval(const UniPoly& a, Raw x) {
    const auto& f = *a.field();
    Raw acc = 0;
    for (std::size_t i = a.coeffs().size(); i-- > 0;) acc = f.add(f.mul(acc, x), a.coeff(i));
    return acc;
}

UniPoly p_pow_mod(const UniPoly& base, std::uint64_t e, const UniPoly& mod) {
    UniPoly result = p_mod(UniPoly::constant(base.field(), 1), mod);
    UniPoly b = p_mod(base, mod);
    while (e) {
        if (e & 1) result = p_mod(p_mul(result, b), mod);
        e >>= 1;
        if (e) b = p_mod(p_mul(b, b), mod);
    }
    return result;
}

UniPoly p_inflate(const UniPoly& a, std::size_t k) {
    if (a.is_zero()) return a;
    std::vector<Raw> c((a.coeffs().size() - 1) * k + 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) c[i * k] = a.coeff(i);
    return UniPoly(a.field(), std::move(c));
}

UniPoly frobenius_power_mod(const UniPoly& f, std::uint64_t q) { return p_pow_mod(UniPoly::x(f.field()), q, f); }

bool splits_completely_distinct(const UniPoly& f) {
    if (f.degree() < 1) return false;
    const UniPoly xq = frobenius_power_mod(f, f.field()->order());
    if (xq != p_mod(UniPoly::x(f.field()), f)) return false;
    return p_gcd(f, p_derivative(f)).is_one();
}

std::vector<Raw> all_roots(const UniPoly& f) {
    if (f.is_zero()) throw DivisionByZeroPoly("roots of the zero polynomial");
    const auto& field = *f.field();
    if (!field.has_tables()) throw FieldTooLarge("exhaustive root scan needs a table-backed field");
    std::vector<Raw> roots;
    if (f.degree() == 0) return roots;
    for (std::uint32_t key = 0; key < field.order(); ++key) {
        const Raw x = field.from_canonical_key(key);
        if (p_eval(f, x) == 0) roots.push_back(x);
    }
    return roots;
}

bool is_squarefree(const UniPoly& f) {
    if (f.degree() <= 0) return true;
    return p_gcd(f, p_derivative(f)).is_one();
}

std::vector<Factor> factor(const UniPoly& f) {
    if (f.is_zero()) throw DivisionByZeroPoly("factorization of the zero polynomial");
    std::vector<Factor> sqf;
    squarefree_parts(p_monic(f), 1, sqf);
    std::mt19937_64 rng(0x5eedf00dULL);
    std::vector<Factor> out;
    const std::uint64_t q = f.field()->order();
    for (const auto& part : sqf) {
        UniPoly rest = part.poly;
        UniPoly xpow = UniPoly::x(f.field());
        for (int d = 1; rest.degree() >= 2 * d; ++d) {
            xpow = p_pow_mod(xpow, q, rest);
            UniPoly g = p_gcd(p_sub(xpow, UniPoly::x(f.field())), rest);
            if (g.degree() > 0) {
                std::vector<UniPoly> pieces;
                equal_degree_split(g, d, rng, pieces);
                for (auto& piece : pieces) out.push_back({p_monic(piece), part.multiplicity});
                rest = p_div(rest, g);
                xpow = p_mod(xpow, rest);
            }
        }
        if (rest.degree() > 0) out.push_back({p_monic(rest), part.multiplicity});
    }
    std::sort(out.begin(), out.end(), factor_less);
    return out;
}

UniPoly interpolate(const FieldPtr& f, const std::vector<Raw>& nodes, const std::vector<Raw>& values) {
    if (nodes.size() != values.size()) throw LengthMismatch("interpolation nodes and values differ in length");
    const auto& field = *f;
    // full = prod (X - x_j)
    std::vector<Raw> full{1};
    for (Raw xj : nodes) {
        std::vector<Raw> next(full.size() + 1, 0);
        for (std::size_t i = 0; i < full.size(); ++i) {
            next[i + 1] = field.add(next[i + 1], full[i]);
            next[i] = field.sub(next[i], field.mul(full[i], xj));
        }
        full = std::move(next);
    }
    std::vector<Raw> acc(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        // basis = full / (X - x_i) via synthetic division
        std::vector<Raw> basis(nodes.size(), 0);
        Raw carry = 0;
        for (std::size_t k = full.size() - 1; k-- > 0;) {
            carry = field.add(full[k + 1], field.mul(carry, nodes[i]));
            basis[k] = carry;
        }
        Raw denom = p_eval(UniPoly(f, basis), nodes[i]);
        if (denom == 0) throw SingularSystem("interpolation nodes are not distinct");
        const Raw s = field.div(values[i], denom);
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] = field.add(acc[k], field.mul(s, basis[k]));
    }
    return UniPoly(f, std::move(acc));
}

}  // namespace fiblrc::poly
