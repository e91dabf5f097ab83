#pragma once

#include <string>
#include <vector>

#include "fiblrc/construction.hpp"
#include "fiblrc/poly.hpp"

namespace fiblrc::newton {

using gf::FieldPtr;
using gf::Raw;

// Exact rational with den > 0 and gcd(num, den) = 1.
struct Rational {
    long num = 0, den = 1;
    static Rational make(long num, long den);
    bool operator==(const Rational&) const = default;
    std::string str() const;
};

struct SupportPoint {
    long i = 0;      // exponent of T
    long v = 0;      // valuation of the coefficient
    Raw residue = 0; // unit part of the coefficient reduced at the place
    bool operator==(const SupportPoint& o) const { return i == o.i && v == o.v; }
};

struct SupportSet {
    FieldPtr field;
    std::vector<SupportPoint> points;  // ascending i
};

// Place (t = infinity) with local parameter 1/t. The coefficients are
// polynomials in t divided by t^normalization, so v = normalization - deg
// and the residue is the leading coefficient.
SupportSet support_set_at_infinity(const std::vector<poly::UniPoly>& coeffs, long normalization);
// Finite place t = c: v is the multiplicity of (t - c).
SupportSet support_set_at_place(const std::vector<poly::UniPoly>& coeffs, Raw c);

struct ArcSegment {
    SupportPoint start, end;
    Rational slope;                    // written -a/b with b = slope.den
    std::vector<SupportPoint> on_line; // support points on the segment, ascending i
    long a() const { return -slope.num; }
    long b() const { return slope.den; }
};

// Lower convex hull; consecutive segments have strictly increasing slope.
std::vector<ArcSegment> lower_hull(const SupportSet& ss);

struct PlaceRecord {
    unsigned e = 0, f = 0;
};

struct SegmentFactorData {
    poly::UniPoly gamma, delta;
    std::vector<poly::Factor> factors;
    bool squarefree = false;
    std::vector<PlaceRecord> places;  // one per factor, only when squarefree
};

SegmentFactorData segment_polynomials(const FieldPtr& field, const ArcSegment& seg);

struct Place {
    std::string name;  // P1, P2, ...
    unsigned e = 0, f = 0;
    long v_t = 0, v_x = 0;
    std::size_t segment = 0;
};

struct ValuationTable {
    int case_id = 0;  // 1: -1 is a square, 2: it is not
    unsigned r = 0;
    SupportSet support;
    std::vector<ArcSegment> segments;
    std::vector<SegmentFactorData> segment_data;
    std::vector<Place> places;
};

// Builds the arc of the curve polynomial at (t = infinity), factors the
// segment polynomials and reads off the places over it. The case predicted
// by the square class of -1 must agree with the factorization.
ValuationTable splitting_at_infinity(const construction::SurfaceParams& params);

// v_P(x^i t^j) for every place of the table.
std::vector<long> monomial_valuations(const ValuationTable& vt, unsigned i, unsigned j);
// Degree of the pole divisor read from the table: sum of f * max(0, -v).
long pole_divisor_degree(const ValuationTable& vt, unsigned i, unsigned j);
// i(r+1) + jr.
long pole_degree(unsigned i, unsigned j, unsigned r);

struct BasisExtremes {
    long max_pole_degree = 0;
    unsigned max_i = 0, max_j = 0;
    long min_v_p1 = 0;
    unsigned min_i = 0, min_j = 0;
};

// Extremes over the code's monomial basis.
BasisExtremes basis_extremes(const ValuationTable& vt);
// n - (max pole degree - min v_{P1}).
long derived_distance_bound(const ValuationTable& vt, long n);

}  // namespace fiblrc::newton
