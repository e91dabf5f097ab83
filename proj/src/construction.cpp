#include "fiblrc/construction.hpp"

#include <algorithm>
#include <set>

namespace fiblrc::construction {

namespace {

void check_locality(unsigned r) {
    if (r < 3 || r % 2 == 0) throw BadLocality("locality r must be odd and at least 3, got " + std::to_string(r));
}

long double two_factorial(unsigned r) {
    long double f = 2;
    for (unsigned k = 2; k <= r + 1; ++k) f *= k;
    return f;
}

unsigned least_exponent(long double base, long double bound) {
    long double power = base;
    for (unsigned a = 1;; ++a, power *= base)
        if (power >= bound * a) return a;
}

}  // namespace

SurfaceParams SurfaceParams::make(FieldPtr field, unsigned r, std::optional<std::uint64_t> q) {
    check_locality(r);
    if (field->p() == 2) throw BadLocality("characteristic 2 is not supported");
    SurfaceParams sp;
    sp.r = r;
    sp.field = field;
    const unsigned mt = field->degree();
    if (q) {
        std::uint64_t pa = 1;
        unsigned a = 0;
        while (pa < *q) {
            pa *= field->p();
            ++a;
        }
        if (pa != *q || mt % a != 0) throw OrderNotDivisible("q is not a subfield order of the field");
        if (*q % (r + 1) != 1) throw OrderNotDivisible("q is not 1 mod r+1");
        sp.q = *q;
        sp.m = mt / a;
    } else {
        std::uint64_t pa = 1;
        for (unsigned a = 1; a <= mt; ++a) {
            pa *= field->p();
            if (mt % a == 0 && pa % (r + 1) == 1) {
                sp.q = pa;
                sp.m = mt / a;
                break;
            }
        }
        if (sp.q == 0) throw OrderNotDivisible("no subfield order q with q = 1 mod " + std::to_string(r + 1));
    }
    sp.zeta = field->nth_root_of_unity(r + 1);
    return sp;
}

poly::UniPoly specialize_P(const SurfaceParams& params, Raw t) {
    const auto& f = *params.field;
    const unsigned r = params.r;
    const Raw u = f.pow(t, r + 1);
    std::vector<Raw> c(r + 2, 0);
    auto bump = [&](std::size_t k, Raw v) { c[k] = f.add(c[k], v); };
    bump(r + 1, 1);
    bump((r + 1) / 2, f.from_int(2));
    bump(3, f.neg(1));
    bump(2, f.add(u, 1));
    bump(1, f.neg(u));
    bump(0, 1);
    return poly::UniPoly(params.field, std::move(c));
}

std::vector<poly::UniPoly> generic_P_coefficients(const SurfaceParams& params) {
    const auto& fp = params.field;
    const auto& f = *fp;
    const unsigned r = params.r;
    using poly::UniPoly;
    std::vector<UniPoly> c(r + 2, UniPoly(fp));
    const UniPoly u = UniPoly::monomial(fp, 1, r + 1);
    auto bump = [&](std::size_t k, const UniPoly& v) { c[k] = poly::p_add(c[k], v); };
    bump(r + 1, UniPoly::constant(fp, 1));
    bump((r + 1) / 2, UniPoly::constant(fp, f.from_int(2)));
    bump(3, UniPoly::constant(fp, f.neg(1)));
    bump(2, poly::p_add(u, UniPoly::constant(fp, 1)));
    bump(1, poly::p_neg(u));
    bump(0, UniPoly::constant(fp, 1));
    return c;
}

bool is_nice_element(const SurfaceParams& params, Raw t) {
    if (t == 0) return false;
    return poly::splits_completely_distinct(specialize_P(params, t));
}

std::vector<NiceOrbit> find_nice_orbits(const SurfaceParams& params) {
    const auto& f = *params.field;
    if (!f.has_tables()) throw FieldTooLarge("nice-element scan needs a table-backed field");
    const std::size_t q = f.order();
    // Niceness depends on t only through u = t^{r+1}.
    std::vector<std::int8_t> by_u(q, -1);
    std::vector<bool> visited(q, false);
    std::vector<NiceOrbit> orbits;
    auto nice = [&](Raw t) {
        const Raw u = f.pow(t, params.r + 1);
        if (by_u[u] < 0) by_u[u] = is_nice_element(params, t) ? 1 : 0;
        return by_u[u] == 1;
    };
    for (std::uint32_t key = 1; key < q; ++key) {
        const Raw t = f.from_canonical_key(key);
        if (visited[t] || !nice(t)) continue;
        NiceOrbit orbit;
        Raw member = t;
        for (unsigned j = 0; j <= params.r; ++j) {
            if (visited[member] || !nice(member))
                throw InternalNicenessViolation("zeta-orbit of a nice element is not closed");
            visited[member] = true;
            orbit.members.push_back(member);
            member = f.mul(member, params.zeta);
        }
        if (member != t) throw InternalNicenessViolation("zeta does not have order r+1");
        std::sort(orbit.members.begin(), orbit.members.end(),
                  [&](Raw a, Raw b) { return f.canonical_key(a) < f.canonical_key(b); });
        orbit.representative = orbit.members.front();
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

std::size_t EvaluationSet::index(const PointIndex& p) const {
    const std::size_t s = side();
    if (p.l >= b() || p.i >= s || p.j >= s) throw IndexOutOfRange("point index out of range");
    return p.l * s * s + p.i * s + p.j;
}

PointIndex EvaluationSet::coords(std::size_t idx) const {
    const std::size_t s = side();
    if (idx >= size()) throw IndexOutOfRange("flat point index out of range");
    return {idx / (s * s), (idx / s) % s, idx % s};
}

EvaluationSet build_evaluation_set(const SurfaceParams& params, const std::vector<NiceOrbit>& all_orbits,
                                   const std::vector<std::size_t>& orbit_indices) {
    if (orbit_indices.empty()) throw EmptySelection("no orbits selected");
    std::set<std::size_t> seen;
    for (auto idx : orbit_indices) {
        if (idx >= all_orbits.size()) throw IndexOutOfRange("orbit index " + std::to_string(idx) + " out of range");
        if (!seen.insert(idx).second) throw IndexOutOfRange("orbit index " + std::to_string(idx) + " repeated");
    }
    const auto& f = *params.field;
    const unsigned r = params.r;
    const std::size_t s = r + 1;
    EvaluationSet es;
    es.params_ = params;
    es.orbit_indices_ = orbit_indices;
    for (auto idx : orbit_indices) {
        const NiceOrbit& orbit = all_orbits[idx];
        es.orbits_.push_back(orbit);
        std::vector<Raw> ts;
        for (std::size_t j = 0; j < s; ++j) ts.push_back(f.mul(f.pow(params.zeta, j), orbit.representative));
        std::vector<Raw> roots = poly::all_roots(specialize_P(params, ts[0]));
        if (roots.size() != s) throw InternalNicenessViolation("orbit representative is not nice");
        for (std::size_t j = 1; j < s; ++j)
            if (poly::all_roots(specialize_P(params, ts[j])) != roots)
                throw InternalNicenessViolation("root set differs across a zeta-orbit");
        es.roots_.push_back(roots);
        es.t_values_.push_back(ts);
    }

    const Raw one = 1;
    std::set<std::tuple<Raw, Raw, Raw>> distinct;
    for (std::size_t l = 0; l < es.b(); ++l) {
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                SurfacePoint pt;
                pt.x = es.roots_[l][i];
                pt.t = es.t_values_[l][j];
                pt.y = f.add(f.pow(pt.x, (r + 1) / 2), one);
                const Raw u = f.pow(pt.t, r + 1);
                const Raw x2 = f.mul(pt.x, pt.x), x3 = f.mul(x2, pt.x);
                const Raw rhs = f.add(f.sub(x3, f.mul(x2, f.add(u, one))), f.mul(pt.x, u));
                if (f.mul(pt.y, pt.y) != rhs) throw InternalNicenessViolation("point is not on the surface");
                if (pt.x == 0 || pt.x == one) throw InternalNicenessViolation("point has x in {0, 1}");
                const Raw kummer = f.sub(f.add(f.mul(pt.y, pt.y), x2), x3);
                if (kummer == 0) throw InternalNicenessViolation("horizontal fiber degenerates at point");
                if (!distinct.insert({pt.x, pt.y, pt.t}).second)
                    throw InternalNicenessViolation("evaluation points are not distinct");
                es.points_.push_back(pt);
            }
        }
        // |H| = |V| = r: distinct x along a vertical set, distinct t along a horizontal one.
        std::set<Raw> xs(es.roots_[l].begin(), es.roots_[l].end()), ts(es.t_values_[l].begin(), es.t_values_[l].end());
        if (xs.size() != s || ts.size() != s) throw InternalNicenessViolation("recovery sets have the wrong size");
    }
    return es;
}

EvaluationSet build_evaluation_set(const SurfaceParams& params, const std::vector<std::size_t>& orbit_indices) {
    return build_evaluation_set(params, find_nice_orbits(params), orbit_indices);
}

RecoverySets recovery_indices(const EvaluationSet& es, std::size_t l, std::size_t i, std::size_t j) {
    es.index({l, i, j});
    RecoverySets sets;
    for (std::size_t k = 0; k < es.side(); ++k) {
        if (k != j) sets.horizontal.push_back({l, i, k});
        if (k != i) sets.vertical.push_back({l, k, j});
    }
    return sets;
}

unsigned m_sufficient(std::uint64_t q, unsigned r) {
    check_locality(r);
    return least_exponent(static_cast<long double>(q), two_factorial(r));
}

unsigned m_upper_estimate(unsigned r) {
    check_locality(r);
    return least_exponent(static_cast<long double>(r + 2), two_factorial(r));
}

}  // namespace fiblrc::construction
