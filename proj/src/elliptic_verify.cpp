#include "fiblrc/elliptic_verify.hpp"

#include <algorithm>
#include <functional>

#include "fiblrc/error.hpp"

namespace fiblrc::elliptic {

Raw WeierstrassCurve::b2() const {
    const auto& f = *field;
    return f.add(f.mul(a1, a1), f.mul(f.from_int(4), a2));
}

Raw WeierstrassCurve::b4() const {
    const auto& f = *field;
    return f.add(f.mul(f.from_int(2), a4), f.mul(a1, a3));
}

Raw WeierstrassCurve::b6() const {
    const auto& f = *field;
    return f.add(f.mul(a3, a3), f.mul(f.from_int(4), a6));
}

Raw WeierstrassCurve::b8() const {
    const auto& f = *field;
    Raw acc = f.mul(f.mul(a1, a1), a6);
    acc = f.add(acc, f.mul(f.from_int(4), f.mul(a2, a6)));
    acc = f.sub(acc, f.mul(a1, f.mul(a3, a4)));
    acc = f.add(acc, f.mul(a2, f.mul(a3, a3)));
    return f.sub(acc, f.mul(a4, a4));
}

Raw WeierstrassCurve::discriminant() const {
    const auto& f = *field;
    const Raw B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    Raw acc = f.neg(f.mul(f.mul(B2, B2), B8));
    acc = f.sub(acc, f.mul(f.from_int(8), f.pow(B4, 3)));
    acc = f.sub(acc, f.mul(f.from_int(27), f.mul(B6, B6)));
    return f.add(acc, f.mul(f.from_int(9), f.mul(B2, f.mul(B4, B6))));
}

bool WeierstrassCurve::contains(const CurvePoint& p) const {
    if (p.infinity) return true;
    const auto& f = *field;
    const Raw lhs = f.add(f.mul(p.y, p.y), f.add(f.mul(a1, f.mul(p.x, p.y)), f.mul(a3, p.y)));
    Raw rhs = f.pow(p.x, 3);
    rhs = f.add(rhs, f.mul(a2, f.mul(p.x, p.x)));
    rhs = f.add(rhs, f.mul(a4, p.x));
    return lhs == f.add(rhs, a6);
}

WeierstrassCurve vertical_fiber(const FieldPtr& field, Raw t) {
    const auto& f = *field;
    const Raw u = f.pow(t, 4);
    if (u == 0 || u == 1) throw SingularFiber("vertical fiber is singular when t^4 is 0 or 1");
    WeierstrassCurve e{field};
    e.a2 = f.neg(f.add(u, 1));
    e.a4 = u;
    if (e.discriminant() == 0) throw SingularFiber("vertical fiber has zero discriminant");
    return e;
}

namespace {

void require_on_curve(const WeierstrassCurve& e, const CurvePoint& p) {
    if (!e.contains(p)) throw PointNotOnCurve("point is not on the curve");
}

}  // namespace

CurvePoint ec_neg(const WeierstrassCurve& e, const CurvePoint& p) {
    require_on_curve(e, p);
    if (p.infinity) return p;
    const auto& f = *e.field;
    return CurvePoint::affine(p.x, f.sub(f.neg(p.y), f.add(f.mul(e.a1, p.x), e.a3)));
}

CurvePoint ec_add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q) {
    require_on_curve(e, p);
    require_on_curve(e, q);
    if (p.infinity) return q;
    if (q.infinity) return p;
    const auto& f = *e.field;
    Raw lambda, nu;
    if (p.x == q.x) {
        const Raw denom = f.add(f.add(f.mul(f.from_int(2), p.y), f.mul(e.a1, p.x)), e.a3);
        if (p.y != q.y || denom == 0) return CurvePoint::O();
        Raw num = f.mul(f.from_int(3), f.mul(p.x, p.x));
        num = f.add(num, f.mul(f.from_int(2), f.mul(e.a2, p.x)));
        num = f.sub(f.add(num, e.a4), f.mul(e.a1, p.y));
        lambda = f.div(num, denom);
        Raw nnum = f.neg(f.pow(p.x, 3));
        nnum = f.add(nnum, f.mul(e.a4, p.x));
        nnum = f.add(nnum, f.mul(f.from_int(2), e.a6));
        nnum = f.sub(nnum, f.mul(e.a3, p.y));
        nu = f.div(nnum, denom);
    } else {
        const Raw dx = f.sub(q.x, p.x);
        lambda = f.div(f.sub(q.y, p.y), dx);
        nu = f.div(f.sub(f.mul(p.y, q.x), f.mul(q.y, p.x)), dx);
    }
    Raw x3 = f.add(f.mul(lambda, lambda), f.mul(e.a1, lambda));
    x3 = f.sub(f.sub(f.sub(x3, e.a2), p.x), q.x);
    const Raw y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, e.a1), x3)), nu), e.a3);
    return CurvePoint::affine(x3, y3);
}

CurvePoint ec_mul(const WeierstrassCurve& e, const CurvePoint& p, std::uint64_t k) {
    CurvePoint acc = CurvePoint::O(), base = p;
    require_on_curve(e, p);
    while (k) {
        if (k & 1) acc = ec_add(e, acc, base);
        base = ec_add(e, base, base);
        k >>= 1;
    }
    return acc;
}

bool ec_is_two_torsion(const WeierstrassCurve& e, const CurvePoint& p) {
    return ec_add(e, p, p).infinity;
}

namespace {

void require_r3(const EvaluationSet& es) {
    if (es.r() != 3) throw BadLocality("elliptic checks need r = 3");
}

}  // namespace

CurvePoint vertical_sum(const EvaluationSet& es, std::size_t l, std::size_t j) {
    require_r3(es);
    const auto& fp = es.params().field;
    const auto e = vertical_fiber(fp, es.t_value(l, j));
    CurvePoint sum = CurvePoint::O();
    for (std::size_t i = 0; i < es.side(); ++i) {
        const auto& pt = es.point(es.index({l, i, j}));
        sum = ec_add(e, sum, CurvePoint::affine(pt.x, pt.y));
    }
    return sum;
}

bool verify_vertical_sum(const EvaluationSet& es, std::size_t l, std::size_t j) {
    return vertical_sum(es, l, j).infinity;
}

CurvePoint vertical_sum_smooth_locus(const EvaluationSet& es, std::size_t l, std::size_t j) {
    require_r3(es);
    const auto& fp = es.params().field;
    const auto& f = *fp;
    const Raw u = f.pow(es.t_value(l, j), 4);
    WeierstrassCurve e{fp};
    e.a2 = f.neg(f.add(u, 1));
    e.a4 = u;
    CurvePoint sum = CurvePoint::O();
    for (std::size_t i = 0; i < es.side(); ++i) {
        const auto& pt = es.point(es.index({l, i, j}));
        // Partial derivatives of y^2 - x^3 - a2 x^2 - a4 x.
        const Raw dx = f.add(f.mul(f.from_int(3), f.mul(pt.x, pt.x)), f.add(f.mul(f.from_int(2), f.mul(e.a2, pt.x)), e.a4));
        if (pt.y == 0 && dx == 0) throw PointNotOnCurve("evaluation point is the singular point of its fiber");
        sum = ec_add(e, sum, CurvePoint::affine(pt.x, pt.y));
    }
    return sum;
}

HorizontalCheck horizontal_check(const EvaluationSet& es, std::size_t l, std::size_t i) {
    require_r3(es);
    const auto& fp = es.params().field;
    const auto& f = *fp;
    HorizontalCheck hc;
    hc.xbar = es.roots(l).at(i);
    hc.c = f.sub(hc.xbar, f.mul(hc.xbar, hc.xbar));
    if (hc.c == 0) throw SingularFiber("horizontal fiber over x = 0 or 1");
    const auto roots = poly::all_roots(poly::UniPoly(fp, {f.neg(hc.c), 0, 1}));
    if (roots.empty()) throw NonSquareTwist("xbar - xbar^2 is not a square");
    hc.a = roots.front();
    const Raw A = hc.c, B = f.neg(f.mul(hc.c, hc.xbar));
    hc.target = WeierstrassCurve{fp};
    hc.target.a4 = f.neg(f.mul(f.from_int(4), f.mul(A, B)));
    if (hc.target.discriminant() == 0) throw SingularFiber("horizontal fiber is singular");
    hc.sum = CurvePoint::O();
    for (std::size_t j = 0; j < es.side(); ++j) {
        const auto& pt = es.point(es.index({l, i, j}));
        // (t, y) on the quartic y^2 = A t^4 + B
        const Raw quartic = f.add(f.mul(A, f.pow(pt.t, 4)), B);
        if (f.mul(pt.y, pt.y) != quartic) throw PointNotOnCurve("evaluation point is not on the horizontal fiber");
        const Raw u = f.add(pt.y, f.mul(hc.a, f.mul(pt.t, pt.t)));
        const Raw X = f.mul(f.mul(f.from_int(2), hc.a), u);
        const Raw Y = f.mul(f.mul(f.from_int(4), hc.c), f.mul(pt.t, u));
        const auto img = CurvePoint::affine(X, Y);
        if (!hc.target.contains(img)) throw PointNotOnCurve("image is not on the Weierstrass model");
        hc.images.push_back(img);
        hc.sum = ec_add(hc.target, hc.sum, img);
    }
    hc.two_torsion = ec_is_two_torsion(hc.target, hc.sum);
    return hc;
}

bool horizontal_sum_two_torsion(const EvaluationSet& es, std::size_t l, std::size_t i) {
    return horizontal_check(es, l, i).two_torsion;
}

std::vector<unsigned> DiscriminantProfile::orders() const {
    std::vector<unsigned> out;
    for (const auto& p : places) out.push_back(p.order);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

unsigned DiscriminantProfile::total() const {
    unsigned s = 0;
    for (const auto& p : places) s += p.order * p.degree;
    return s;
}

namespace {

std::string element_label(const gf::Field& f, Raw a) {
    if (a == 0) return "0";
    if (f.has_tables()) return "w^" + std::to_string(*f.log(a));
    return std::to_string(a);
}

}  // namespace

DiscriminantProfile discriminant_profile(const FieldPtr& field) {
    using poly::UniPoly;
    const auto& f = *field;
    // a2 = -(t^4 + 1), a4 = t^4; a1 = a3 = a6 = 0.
    const UniPoly a2(field, {f.neg(1), 0, 0, 0, f.neg(1)});
    const UniPoly a4(field, {0, 0, 0, 0, 1});
    const auto k = [&](std::int64_t v) { return UniPoly::constant(field, f.from_int(v)); };
    const UniPoly b2 = poly::p_mul(k(4), a2);
    const UniPoly b4 = poly::p_mul(k(2), a4);
    const UniPoly b8 = poly::p_neg(poly::p_mul(a4, a4));
    // b6 = 0
    UniPoly delta = poly::p_neg(poly::p_mul(poly::p_mul(b2, b2), b8));
    delta = poly::p_sub(delta, poly::p_mul(k(8), poly::p_mul(b4, poly::p_mul(b4, b4))));
    DiscriminantProfile prof{delta, {}};
    const int homog = 24;
    if (delta.degree() < homog) prof.places.push_back({"t=inf", 1, static_cast<unsigned>(homog - delta.degree())});
    for (const auto& fac : poly::factor(delta)) {
        std::string label;
        if (fac.poly.degree() == 1)
            label = "t=" + element_label(f, f.neg(fac.poly.coeff(0)));
        else {
            label = "deg" + std::to_string(fac.poly.degree()) + "[";
            for (std::size_t c = 0; c < fac.poly.coeffs().size(); ++c)
                label += (c ? "," : "") + element_label(f, fac.poly.coeff(c));
            label += "]";
        }
        prof.places.push_back({label, static_cast<unsigned>(fac.poly.degree()), fac.multiplicity});
    }
    return prof;
}

}  // namespace fiblrc::elliptic
