#pragma once

#include <string>
#include <vector>

#include "fiblrc/construction.hpp"
#include "fiblrc/poly.hpp"

namespace fiblrc::elliptic {

using construction::EvaluationSet;
using gf::FieldPtr;
using gf::Raw;

struct CurvePoint {
    bool infinity = true;
    Raw x = 0, y = 0;
    static CurvePoint O() { return {}; }
    static CurvePoint affine(Raw x, Raw y) { return {false, x, y}; }
    bool operator==(const CurvePoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
struct WeierstrassCurve {
    FieldPtr field;
    Raw a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

    Raw b2() const;
    Raw b4() const;
    Raw b6() const;
    Raw b8() const;
    Raw discriminant() const;
    bool contains(const CurvePoint& p) const;
};

// y^2 = x^3 - x^2(t^4 + 1) + x t^4 at t = tbar.
WeierstrassCurve vertical_fiber(const FieldPtr& field, Raw t);

CurvePoint ec_neg(const WeierstrassCurve& e, const CurvePoint& p);
CurvePoint ec_add(const WeierstrassCurve& e, const CurvePoint& p, const CurvePoint& q);
CurvePoint ec_mul(const WeierstrassCurve& e, const CurvePoint& p, std::uint64_t k);
bool ec_is_two_torsion(const WeierstrassCurve& e, const CurvePoint& p);

// Sum of the four evaluation points on vertical fiber (l, j).
CurvePoint vertical_sum(const EvaluationSet& es, std::size_t l, std::size_t j);
bool verify_vertical_sum(const EvaluationSet& es, std::size_t l, std::size_t j);

// Same sum on any fiber, singular ones included: the chord-tangent law is
// applied on the nonsingular locus. Throws PointNotOnCurve if an evaluation
// point is the singular point of its fiber.
CurvePoint vertical_sum_smooth_locus(const EvaluationSet& es, std::size_t l, std::size_t j);

struct HorizontalCheck {
    Raw xbar = 0;
    Raw c = 0;  // xbar - xbar^2
    Raw a = 0;  // a^2 = c
    WeierstrassCurve target;  // Y^2 = X^3 - 4AB X with A = c, B = -c xbar
    std::vector<CurvePoint> images;
    CurvePoint sum;
    bool two_torsion = false;
};

// The fiber over x = xbar is y^2 = c (t^4 - xbar). With c = a^2 the map
// X = 2a(y + a t^2), Y = 4a^2 t (y + a t^2) sends it to the target curve.
HorizontalCheck horizontal_check(const EvaluationSet& es, std::size_t l, std::size_t i);
bool horizontal_sum_two_torsion(const EvaluationSet& es, std::size_t l, std::size_t i);

struct DiscriminantPlace {
    std::string place;  // "t=inf", "t=0", "t=w^k" or the factor for higher degree
    unsigned degree = 1;
    unsigned order = 0;
};

struct DiscriminantProfile {
    poly::UniPoly delta;
    std::vector<DiscriminantPlace> places;
    // Vanishing orders, descending.
    std::vector<unsigned> orders() const;
    unsigned total() const;
};

// Discriminant of the vertical fibration as a polynomial in t, homogenized
// to degree 24.
DiscriminantProfile discriminant_profile(const FieldPtr& field);

}  // namespace fiblrc::elliptic
