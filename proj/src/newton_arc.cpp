#include "fiblrc/newton_arc.hpp"

#include <numeric>

#include "fiblrc/error.hpp"
#include "fiblrc/lrc_code.hpp"

namespace fiblrc::newton {

Rational Rational::make(long num, long den) {
    if (den == 0) throw InvariantViolation("rational with zero denominator");
    if (den < 0) num = -num, den = -den;
    const long g = std::gcd(num, den);
    return {num / g, den / g};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

SupportSet support_set_at_infinity(const std::vector<poly::UniPoly>& coeffs, long normalization) {
    if (coeffs.empty()) throw AllZero("no coefficients");
    SupportSet ss{coeffs.front().field(), {}};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto& a = coeffs[i];
        if (a.is_zero()) continue;
        ss.points.push_back({static_cast<long>(i), normalization - a.degree(), a.leading()});
    }
    if (ss.points.empty()) throw AllZero("all coefficients are zero");
    return ss;
}

SupportSet support_set_at_place(const std::vector<poly::UniPoly>& coeffs, Raw c) {
    if (coeffs.empty()) throw AllZero("no coefficients");
    const auto& fp = coeffs.front().field();
    SupportSet ss{fp, {}};
    const poly::UniPoly lin(fp, {fp->neg(c), 1});
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        poly::UniPoly a = coeffs[i];
        if (a.is_zero()) continue;
        long v = 0;
        for (;;) {
            auto [qt, rem] = poly::p_divmod(a, lin);
            if (!rem.is_zero()) break;
            a = qt;
            ++v;
        }
        ss.points.push_back({static_cast<long>(i), v, poly::p_eval(a, c)});
    }
    if (ss.points.empty()) throw AllZero("all coefficients are zero");
    return ss;
}

namespace {

// Twice the signed area of (o, a, b); positive for a left turn.
long cross(const SupportPoint& o, const SupportPoint& a, const SupportPoint& b) {
    return (a.i - o.i) * (b.v - o.v) - (a.v - o.v) * (b.i - o.i);
}

bool on_line(const SupportPoint& s, const SupportPoint& e, const SupportPoint& p) {
    return (p.v - s.v) * (e.i - s.i) == (e.v - s.v) * (p.i - s.i);
}

}  // namespace

std::vector<ArcSegment> lower_hull(const SupportSet& ss) {
    std::vector<SupportPoint> hull;
    for (const auto& p : ss.points) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    std::vector<ArcSegment> segs;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        ArcSegment seg;
        seg.start = hull[k];
        seg.end = hull[k + 1];
        seg.slope = Rational::make(seg.end.v - seg.start.v, seg.end.i - seg.start.i);
        for (const auto& p : ss.points)
            if (p.i >= seg.start.i && p.i <= seg.end.i && on_line(seg.start, seg.end, p)) seg.on_line.push_back(p);
        segs.push_back(std::move(seg));
    }
    return segs;
}

SegmentFactorData segment_polynomials(const FieldPtr& field, const ArcSegment& seg) {
    const auto& f = *field;
    const long b = seg.b();
    if (seg.end.residue == 0) throw NotOnSegment("segment end has zero residue");
    const Raw inv_end = f.inv(seg.end.residue);
    std::vector<Raw> g(seg.end.i - seg.start.i + 1, 0), d((seg.end.i - seg.start.i) / b + 1, 0);
    for (const auto& p : seg.on_line) {
        if (p.i < seg.start.i || p.i > seg.end.i || !on_line(seg.start, seg.end, p))
            throw NotOnSegment("support point (" + std::to_string(p.i) + ", " + std::to_string(p.v) + ") is off the segment");
        const long off = p.i - seg.start.i;
        if (off % b != 0) throw NotOnSegment("exponent offset not divisible by b");
        const Raw c = f.mul(inv_end, p.residue);
        g[off] = c;
        d[off / b] = c;
    }
    SegmentFactorData out{poly::UniPoly(field, g), poly::UniPoly(field, d), {}, true, {}};
    if (poly::p_inflate(out.delta, b) != out.gamma) throw InvariantViolation("gamma(T) != delta(T^b)");
    out.factors = poly::factor(out.delta);
    for (const auto& fac : out.factors) out.squarefree = out.squarefree && fac.multiplicity == 1;
    if (out.squarefree)
        for (const auto& fac : out.factors)
            out.places.push_back({static_cast<unsigned>(b), static_cast<unsigned>(fac.poly.degree())});
    return out;
}

ValuationTable splitting_at_infinity(const construction::SurfaceParams& params) {
    const auto& fp = params.field;
    ValuationTable vt;
    vt.r = params.r;
    vt.case_id = fp->is_square(fp->neg(1)) ? 1 : 2;
    vt.support = support_set_at_infinity(construction::generic_P_coefficients(params), params.r + 1);
    vt.segments = lower_hull(vt.support);
    unsigned ef = 0;
    for (std::size_t s = 0; s < vt.segments.size(); ++s) {
        vt.segment_data.push_back(segment_polynomials(fp, vt.segments[s]));
        const auto& data = vt.segment_data.back();
        if (!data.squarefree)
            throw InvariantViolation("delta of segment " + std::to_string(s + 1) + " is not squarefree");
        for (const auto& pr : data.places) {
            Place pl;
            pl.name = "P" + std::to_string(vt.places.size() + 1);
            pl.e = pr.e;
            pl.f = pr.f;
            pl.v_t = -static_cast<long>(pr.e);
            // A root on a segment of slope -a/b has value a/b in units of 1/t.
            pl.v_x = vt.segments[s].a();
            pl.segment = s;
            vt.places.push_back(pl);
            ef += pr.e * pr.f;
        }
    }
    if (ef != params.r + 1) throw InvariantViolation("sum of e*f over (t = infinity) is " + std::to_string(ef));
    const std::size_t expected = vt.case_id == 1 ? 4 : 3;
    if (vt.places.size() != expected)
        throw InvariantViolation("found " + std::to_string(vt.places.size()) + " places over (t = infinity) in case " +
                                 std::to_string(vt.case_id));
    return vt;
}

std::vector<long> monomial_valuations(const ValuationTable& vt, unsigned i, unsigned j) {
    std::vector<long> out;
    for (const auto& pl : vt.places) out.push_back(static_cast<long>(i) * pl.v_x + static_cast<long>(j) * pl.v_t);
    return out;
}

long pole_divisor_degree(const ValuationTable& vt, unsigned i, unsigned j) {
    const auto vals = monomial_valuations(vt, i, j);
    long deg = 0;
    for (std::size_t k = 0; k < vals.size(); ++k)
        if (vals[k] < 0) deg += -vals[k] * static_cast<long>(vt.places[k].f);
    return deg;
}

long pole_degree(unsigned i, unsigned j, unsigned r) {
    return static_cast<long>(i) * (r + 1) + static_cast<long>(j) * r;
}

BasisExtremes basis_extremes(const ValuationTable& vt) {
    BasisExtremes ex;
    bool first = true;
    for (const auto& mono : lrc::basis(vt.r).monomials) {
        const long pd = pole_divisor_degree(vt, mono.x_deg, mono.t_deg);
        const long v1 = monomial_valuations(vt, mono.x_deg, mono.t_deg).front();
        if (first || pd > ex.max_pole_degree) ex.max_pole_degree = pd, ex.max_i = mono.x_deg, ex.max_j = mono.t_deg;
        if (first || v1 < ex.min_v_p1) ex.min_v_p1 = v1, ex.min_i = mono.x_deg, ex.min_j = mono.t_deg;
        first = false;
    }
    return ex;
}

long derived_distance_bound(const ValuationTable& vt, long n) {
    const auto ex = basis_extremes(vt);
    return n - (ex.max_pole_degree - ex.min_v_p1);
}

}  // namespace fiblrc::newton
