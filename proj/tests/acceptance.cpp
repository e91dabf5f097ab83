// Acceptance suite. Prints one PASS/FAIL line per criterion followed by
// indented detail lines. Exit status is 0 when every failing sub-check is one
// of the documented conflicts with the recorded counterexample value, so an
// unexpected change in either direction still breaks the test run.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fiblrc/elliptic_verify.hpp"
#include "fiblrc/error.hpp"
#include "fiblrc/harness.hpp"
#include "fiblrc/lrc_code.hpp"
#include "fiblrc/newton_arc.hpp"
#include "fiblrc/recovery.hpp"

using namespace fiblrc;
using gf::Raw;

namespace {

constexpr unsigned kR = 3;

// Sub-checks where the computation disagrees with the published value. The
// number is what the computation is expected to produce; anything else is
// unexplained.
const std::map<std::string, long> kKnownConflicts = {
    {"13^2 nice orbit count", 5},
    {"11^2 horizontal fibers with nonsquare c", 8},
    {"13^2 horizontal fibers with nonsquare c", 10},
};

struct Criterion {
    std::string title;
    std::vector<std::string> details;
    std::vector<std::string> failures;  // sub-check failures
    std::size_t unexplained = 0;

    void note(const std::string& s) { details.push_back(s); }
    void check(bool ok, const std::string& what) {
        if (!ok) {
            failures.push_back(what);
            ++unexplained;
        }
    }
    // A sub-check whose failure may be a known conflict.
    void check_value(const std::string& key, long observed, long expected) {
        if (observed == expected) return;
        std::ostringstream os;
        os << key << ": observed " << observed << ", published " << expected;
        const auto it = kKnownConflicts.find(key);
        if (it != kKnownConflicts.end() && it->second == observed) {
            failures.push_back(os.str() + " [known conflict]");
        } else {
            failures.push_back(os.str());
            ++unexplained;
        }
    }
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s;
}

// An orbit as the published table names it: zeta^i w^e, or zeta^i c for an integer c.
struct Label {
    bool literal;
    std::uint64_t v;
    std::string str() const { return literal ? std::to_string(v) : "w^" + std::to_string(v); }
};

struct FieldCase {
    unsigned p, m;
    std::size_t published_orbit_count;
    std::vector<Label> labels;
};

const std::vector<FieldCase> kTableFields = {
    {7, 2, 2, {{false, 46}, {false, 6}}},
    {3, 4, 1, {{true, 1}}},
    {11, 2, 3, {{true, 1}, {false, 15}, {true, 4}}},
    {13, 2, 4, {{false, 1}, {false, 13}, {false, 21}, {true, 4}}},
};

const FieldCase kLargeField = {
    5, 4, 8, {{true, 1}, {false, 9}, {false, 13}, {false, 33}, {false, 39}, {false, 45}, {false, 65}}};

struct Instance {
    construction::SurfaceParams sp;
    std::vector<construction::NiceOrbit> orbits;
    std::uint64_t s = 0;           // w = g^s
    std::vector<std::size_t> map;  // label -> orbit index
};

// Finds the least s coprime to Q-1 such that, with w = g^s, every label is
// nice and the labels name distinct orbits.
Instance resolve(const FieldCase& fc) {
    Instance in{construction::SurfaceParams::make(gf::make_field(fc.p, fc.m), kR), {}, 0, {}};
    in.orbits = construction::find_nice_orbits(in.sp);
    const auto& f = *in.sp.field;
    std::map<Raw, std::size_t> owner;
    for (std::size_t k = 0; k < in.orbits.size(); ++k)
        for (Raw t : in.orbits[k].members) owner[t] = k;
    const std::uint64_t Q1 = f.order() - 1;
    for (std::uint64_t s = 1; s < Q1; ++s) {
        if (std::gcd(s, Q1) != 1) continue;
        std::vector<std::size_t> map;
        std::set<std::size_t> seen;
        for (const auto& lb : fc.labels) {
            const Raw t = lb.literal ? f.from_int(static_cast<std::int64_t>(lb.v)) : f.exp(s * lb.v % Q1);
            const auto it = owner.find(t);
            if (it == owner.end() || !seen.insert(it->second).second) break;
            map.push_back(it->second);
        }
        if (map.size() == fc.labels.size()) {
            in.s = s;
            in.map = map;
            return in;
        }
    }
    return in;
}

struct CodeResult {
    std::string field;
    std::vector<std::size_t> subset;
    std::size_t b = 0, n = 0, k = 0, d = 0;
    long delta = 0;
    std::size_t fmin_weight = 0;
};

std::map<std::pair<std::string, std::vector<std::size_t>>, CodeResult> g_codes;

const CodeResult& code(const Instance& in, std::vector<std::size_t> subset) {
    std::sort(subset.begin(), subset.end());
    const auto key = std::make_pair(in.sp.field->describe(), subset);
    auto it = g_codes.find(key);
    if (it != g_codes.end()) return it->second;
    auto es = construction::build_evaluation_set(in.sp, in.orbits, subset);
    auto gm = lrc::generator_matrix(es);
    CodeResult c;
    c.field = key.first;
    c.subset = subset;
    c.b = es.b();
    c.n = es.size();
    c.k = lrc::matrix_rank(*in.sp.field, gm.rows(), gm.cols(), gm.entries());
    c.d = lrc::min_distance(es, gm).d;
    c.delta = lrc::distance_lower_bound(static_cast<long>(c.n), kR);
    if (c.b == 1) c.fmin_weight = lrc::hamming_weight(lrc::encode(gm, lrc::f_min_message(es)));
    return g_codes.emplace(key, c).first->second;
}

std::vector<std::size_t> mapped(const Instance& in, const std::vector<std::size_t>& labels) {
    std::vector<std::size_t> out;
    for (auto l : labels) out.push_back(in.map[l]);
    return out;
}

std::vector<Instance> g_table;
Instance g_large;

// 1. Parameter table rows for the four small fields.
void criterion1(Criterion& c) {
    const std::size_t expected_d[] = {0, 8, 24, 40, 55};
    for (std::size_t fi = 0; fi < kTableFields.size(); ++fi) {
        const auto& fc = kTableFields[fi];
        const auto& in = g_table[fi];
        const std::string name = std::to_string(fc.p) + "^" + std::to_string(fc.m);
        c.check_value(name + " nice orbit count", static_cast<long>(in.orbits.size()),
                      static_cast<long>(fc.published_orbit_count));
        if (in.map.empty()) {
            c.check(false, name + ": published orbits could not be located");
            continue;
        }
        std::string labels;
        for (std::size_t l = 0; l < fc.labels.size(); ++l)
            labels += (l ? ", " : "") + fc.labels[l].str() + "->" + std::to_string(in.map[l]);
        c.note(name + ": w = g^" + std::to_string(in.s) + ", published orbits " + labels);
        std::size_t rows = 0;
        for (const auto& sub : harness::orbit_subsets(fc.labels.size())) {
            const auto& cr = code(in, mapped(in, sub));
            ++rows;
            const std::string row = name + " orbits {" + join(cr.subset) + "}";
            c.check(cr.n == 16 * sub.size(), row + ": n=" + std::to_string(cr.n));
            c.check(cr.k == 5, row + ": k=" + std::to_string(cr.k));
            if (sub.size() >= 2)
                c.check(cr.delta == static_cast<long>(cr.n) - 9, row + ": delta=" + std::to_string(cr.delta));
            c.check(cr.d == expected_d[sub.size()],
                    row + ": d=" + std::to_string(cr.d) + " expected " + std::to_string(expected_d[sub.size()]));
        }
        c.note(name + ": " + std::to_string(rows) + " published rows checked");
    }
}

// 2. The 5^4 spot checks.
void criterion2(Criterion& c) {
    const auto& in = g_large;
    c.check_value("5^4 nice orbit count", static_cast<long>(in.orbits.size()), 8);
    if (in.map.empty()) {
        c.check(false, "5^4: published orbits could not be located");
        return;
    }
    c.note("5^4: w = g^" + std::to_string(in.s));
    const std::size_t expected[] = {0, 0, 0, 40, 56, 71, 87, 103};
    for (std::size_t b = 3; b <= 7; ++b) {
        std::vector<std::size_t> labels(b);
        std::iota(labels.begin(), labels.end(), 0);
        const auto t0 = std::chrono::steady_clock::now();
        const auto& cr = code(in, mapped(in, labels));
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[160];
        std::snprintf(buf, sizeof buf, "b=%zu orbits {%s}: n=%zu delta=%ld d=%zu (%.1fs)", b, join(cr.subset).c_str(),
                      cr.n, cr.delta, cr.d, secs);
        c.note(buf);
        c.check(cr.n == 16 * b, std::string(buf) + ": n");
        c.check(cr.delta == static_cast<long>(cr.n) - 9, std::string(buf) + ": delta");
        c.check(cr.d == expected[b], std::string(buf) + ": d expected " + std::to_string(expected[b]));
    }
}

void for_each_full_table(const std::function<void(const Instance&, const std::vector<std::size_t>&)>& fn) {
    for (const auto& in : g_table)
        for (const auto& sub : harness::orbit_subsets(in.orbits.size())) fn(in, sub);
}

// 3. Structural parameters over every constructed code.
void criterion3(Criterion& c) {
    std::size_t codes = 0, b1 = 0;
    for_each_full_table([&](const Instance& in, const std::vector<std::size_t>& sub) { code(in, sub); });
    for (const auto& [key, cr] : g_codes) {
        ++codes;
        const std::string row = cr.field + " {" + join(cr.subset) + "}";
        c.check(cr.k == kR * (kR - 1) - 1, row + ": rank " + std::to_string(cr.k));
        c.check(cr.n == cr.b * (kR + 1) * (kR + 1), row + ": n " + std::to_string(cr.n));
        if (cr.b == 1) {
            ++b1;
            c.check(cr.d == 8, row + ": b=1 but d=" + std::to_string(cr.d));
            c.check(cr.fmin_weight == 8, row + ": f_min weight " + std::to_string(cr.fmin_weight));
        }
    }
    // Dimension for a larger locality as well.
    for (auto [p, m, r] : {std::tuple{7u, 2u, 5u}, {7u, 2u, 7u}}) {
        auto sp = construction::SurfaceParams::make(gf::make_field(p, m), r);
        auto orbits = construction::find_nice_orbits(sp);
        if (orbits.empty()) {
            c.note("r=" + std::to_string(r) + " over " + sp.field->describe() + ": no nice orbits, skipped");
            continue;
        }
        auto es = construction::build_evaluation_set(sp, orbits, {0});
        auto gm = lrc::generator_matrix(es);
        const auto k = lrc::matrix_rank(*sp.field, gm.rows(), gm.cols(), gm.entries());
        c.check(k == r * (r - 1) - 1, "r=" + std::to_string(r) + ": rank " + std::to_string(k));
        c.note("r=" + std::to_string(r) + " over " + sp.field->describe() + ": k=" + std::to_string(k));
    }
    c.note(std::to_string(codes) + " r=3 codes, " + std::to_string(b1) + " with b=1");
}

// 4. Bounds and the gap d - delta.
void criterion4(Criterion& c) {
    long max_gap = 0;
    std::map<long, std::size_t> gaps;
    for (const auto& [key, cr] : g_codes) {
        if (cr.b < 2) continue;
        const long n = static_cast<long>(cr.n), d = static_cast<long>(cr.d);
        const long lo = n - (2 * kR * kR - 2 * kR - 3), hi = n - (kR * kR - 4);
        const std::string row = cr.field + " {" + join(cr.subset) + "}";
        c.check(lo <= d && d <= hi, row + ": d=" + std::to_string(d) + " outside [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]");
        c.check(lrc::singleton_availability_upper(n, 5, kR) >= d, row + ": above the availability bound");
        gaps[d - cr.delta]++;
        max_gap = std::max(max_gap, d - cr.delta);
    }
    std::string hist;
    for (auto [g, cnt] : gaps) hist += " gap " + std::to_string(g) + ": " + std::to_string(cnt) + ";";
    c.note("b>=2 codes by d - delta:" + hist);
    c.check(max_gap <= 1, "max gap " + std::to_string(max_gap));
}

// 5. Recovery.
void criterion5(Criterion& c) {
    std::mt19937_64 rng(20240229);
    std::vector<const Instance*> all;
    for (const auto& in : g_table) all.push_back(&in);
    all.push_back(&g_large);
    for (const auto* in : all) {
        std::vector<std::size_t> sub(in->orbits.size());
        std::iota(sub.begin(), sub.end(), 0);
        auto es = construction::build_evaluation_set(in->sp, in->orbits, sub);
        auto gm = lrc::generator_matrix(es);
        const auto& f = *in->sp.field;
        const std::string name = f.describe();

        std::size_t set_errors = 0;
        for (std::size_t idx = 0; idx < es.size(); ++idx) {
            const auto pi = es.coords(idx);
            const auto rs = construction::recovery_indices(es, pi.l, pi.i, pi.j);
            std::set<std::size_t> h, v;
            for (const auto& q : rs.horizontal) {
                h.insert(es.index(q));
                set_errors += q.l != pi.l || q.i != pi.i;
            }
            for (const auto& q : rs.vertical) {
                v.insert(es.index(q));
                set_errors += q.l != pi.l || q.j != pi.j;
            }
            set_errors += h.size() != kR || v.size() != kR || h.count(idx) || v.count(idx);
            for (auto a : h) set_errors += v.count(a);
        }
        c.check(set_errors == 0, name + ": recovery set errors " + std::to_string(set_errors));

        const int messages = 1000;
        std::size_t single = 0, single_bad = 0, pair = 0, pair_bad = 0;
        for (int it = 0; it < messages; ++it) {
            std::vector<Raw> msg(gm.rows());
            for (auto& x : msg) x = static_cast<Raw>(harness::uniform_below(rng, f.order()));
            const auto cw = lrc::encode(gm, msg);
            for (std::size_t idx = 0; idx < es.size(); ++idx) {
                const auto w = recovery::erase(cw, {idx});
                const auto pi = es.coords(idx);
                const Raw h = recovery::recover_horizontal(es, w, pi);
                const Raw v = recovery::recover_vertical(es, w, pi);
                ++single;
                single_bad += h != cw[idx] || v != cw[idx];
            }
            const auto l = harness::uniform_below(rng, es.b());
            const auto j = harness::uniform_below(rng, kR + 1);
            const auto i1 = harness::uniform_below(rng, kR + 1);
            const auto i2 = (i1 + 1 + harness::uniform_below(rng, kR)) % (kR + 1);
            const auto rep = recovery::repair(es, recovery::erase(cw, {es.index({l, i1, j}), es.index({l, i2, j})}));
            ++pair;
            bool ok = rep.unrecovered.empty();
            for (std::size_t k = 0; ok && k < cw.size(); ++k) ok = rep.word[k] == cw[k];
            pair_bad += !ok;
        }
        c.note(name + ": " + std::to_string(messages) + " messages, " + std::to_string(single) +
               " single erasures, " + std::to_string(pair) + " vertical pairs");
        c.check(single_bad == 0, name + ": " + std::to_string(single_bad) + " single erasures disagreed");
        c.check(pair_bad == 0, name + ": " + std::to_string(pair_bad) + " vertical pairs not repaired");
    }
}

// 6. Newton arc at the pole of t.
void criterion6(Criterion& c) {
    struct NCase {
        unsigned p, m, r;
    };
    const std::vector<NCase> cases = {{7, 2, 3}, {13, 1, 3}, {5, 4, 3}, {7, 1, 5}, {7, 2, 5}, {17, 1, 7},
                                      {7, 2, 7}, {11, 1, 9}, {41, 1, 9}, {31, 1, 9}};
    for (const auto& nc : cases) {
        auto sp = construction::SurfaceParams::make(gf::make_field(nc.p, nc.m), nc.r);
        const auto& fp = sp.field;
        const long r = nc.r;
        const std::string name = fp->describe() + " r=" + std::to_string(r);
        newton::ValuationTable vt;
        try {
            vt = newton::splitting_at_infinity(sp);
        } catch (const Error& e) {
            c.check(false, name + ": " + e.what());
            continue;
        }
        c.check(vt.segments.size() == 3, name + ": " + std::to_string(vt.segments.size()) + " segments");
        if (vt.segments.size() != 3) continue;
        c.check(vt.segments[0].slope == newton::Rational::make(-(r + 1), 1), name + ": slope 1");
        c.check(vt.segments[1].slope == newton::Rational::make(0, 1), name + ": slope 2");
        c.check(vt.segments[2].slope == newton::Rational::make(r + 1, r - 1), name + ": slope 3");
        const poly::UniPoly t_minus_1(fp, {fp->neg(1), 1}), t2_plus_1(fp, {1, 0, 1});
        c.check(vt.segment_data[0].delta == t_minus_1, name + ": delta 1");
        c.check(vt.segment_data[1].delta == t_minus_1, name + ": delta 2");
        c.check(vt.segment_data[2].delta == t2_plus_1, name + ": delta 3");
        const int expected_case = fp->order() % 4 == 1 ? 1 : 2;
        c.check(vt.case_id == expected_case, name + ": case " + std::to_string(vt.case_id));
        long ef = 0;
        for (const auto& pl : vt.places) ef += static_cast<long>(pl.e * pl.f);
        c.check(ef == r + 1, name + ": sum ef " + std::to_string(ef));
        const auto ex = newton::basis_extremes(vt);
        c.check(ex.max_pole_degree == 2 * r * r - 2 * r - 1, name + ": max pole " + std::to_string(ex.max_pole_degree));
        c.check(ex.min_v_p1 == 2, name + ": min v_P1 " + std::to_string(ex.min_v_p1));
        const long n = 2 * (r + 1) * (r + 1);
        c.check(newton::derived_distance_bound(vt, n) == n - (2 * r * r - 2 * r - 3), name + ": bound");
        c.note(name + ": case " + std::to_string(vt.case_id) + ", " + std::to_string(vt.places.size()) +
               " places, max pole " + std::to_string(ex.max_pole_degree));
    }
}

// 7. Elliptic invariants on every nice point of each table field.
void criterion7(Criterion& c) {
    std::vector<const Instance*> all;
    for (const auto& in : g_table) all.push_back(&in);
    all.push_back(&g_large);
    for (const auto* in : all) {
        std::vector<std::size_t> sub(in->orbits.size());
        std::iota(sub.begin(), sub.end(), 0);
        auto es = construction::build_evaluation_set(in->sp, in->orbits, sub);
        const auto& f = *in->sp.field;
        const std::string name = f.describe();

        std::size_t vfibers = 0, nodal = 0, vbad = 0;
        for (std::size_t l = 0; l < es.b(); ++l)
            for (std::size_t j = 0; j <= kR; ++j) {
                ++vfibers;
                try {
                    vbad += !elliptic::verify_vertical_sum(es, l, j);
                } catch (const SingularFiber&) {
                    ++nodal;
                    vbad += !elliptic::vertical_sum_smooth_locus(es, l, j).infinity;
                }
            }
        c.check(vbad == 0, name + ": " + std::to_string(vbad) + " vertical fibers with nonzero sum");

        std::size_t hfibers = 0, nonsquare = 0, hbad = 0;
        for (std::size_t l = 0; l < es.b(); ++l)
            for (std::size_t i = 0; i <= kR; ++i) {
                ++hfibers;
                try {
                    hbad += !elliptic::horizontal_sum_two_torsion(es, l, i);
                } catch (const NonSquareTwist&) {
                    ++nonsquare;
                }
            }
        c.check(hbad == 0, name + ": " + std::to_string(hbad) + " horizontal sums not 2-torsion");
        c.check_value(std::to_string(f.p()) + "^" + std::to_string(f.degree()) +
                          " horizontal fibers with nonsquare c",
                      static_cast<long>(nonsquare), 0);

        const auto prof = elliptic::discriminant_profile(in->sp.field);
        c.check(prof.orders() == std::vector<unsigned>{8, 8, 2, 2, 2, 2} && prof.total() == 24,
                name + ": discriminant orders");

        c.note(name + ": " + std::to_string(vfibers) + " vertical fibers sum to O (" + std::to_string(nodal) +
               " nodal, summed on the smooth locus); " + std::to_string(hfibers - nonsquare) + "/" +
               std::to_string(hfibers) + " horizontal fibers with square c, all 2-torsion; discriminant orders 8,8,2,2,2,2");
    }
}

// 8. Fiber-structural weight against direct evaluation, all projective
// messages of the 7^2, b=1 codes.
void criterion8(Criterion& c) {
    const auto& in = g_table[0];
    const auto& f = *in.sp.field;
    const Raw Q = static_cast<Raw>(f.order());
    for (std::size_t orbit = 0; orbit < in.orbits.size(); ++orbit) {
        auto es = construction::build_evaluation_set(in.sp, in.orbits, {orbit});
        auto gm = lrc::generator_matrix(es);
        const std::size_t k = gm.rows();
        std::uint64_t count = 0, mismatches = 0;
        std::size_t min_w = es.size();
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Raw> msg(k);
        // Leading nonzero coordinate fixed to 1.
        for (std::size_t lead = 0; lead < k; ++lead) {
            std::fill(msg.begin(), msg.end(), 0);
            msg[lead] = 1;
            const std::size_t free = k - lead - 1;
            std::uint64_t total = 1;
            for (std::size_t a = 0; a < free; ++a) total *= Q;
            for (std::uint64_t code_idx = 0; code_idx < total; ++code_idx) {
                std::uint64_t rest = code_idx;
                for (std::size_t a = 0; a < free; ++a) {
                    msg[lead + 1 + a] = static_cast<Raw>(rest % Q);
                    rest /= Q;
                }
                const auto w1 = lrc::fiber_weight(es, msg);
                const auto w2 = lrc::naive_weight(gm, msg);
                mismatches += w1 != w2;
                min_w = std::min(min_w, w2);
                ++count;
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[160];
        std::snprintf(buf, sizeof buf, "7^2 orbit %zu: %llu messages, %llu mismatches, min weight %zu (%.1fs)", orbit,
                      static_cast<unsigned long long>(count), static_cast<unsigned long long>(mismatches), min_w, secs);
        c.note(buf);
        std::uint64_t expected = 0;
        for (std::size_t a = 0, pw = 1; a < k; ++a, pw *= Q) expected += pw;
        c.check(count == expected, "7^2: enumerated " + std::to_string(count));
        c.check(mismatches == 0, buf);
        c.check(min_w == 8, "7^2: min weight " + std::to_string(min_w));
    }
}

}  // namespace

int main() {
    std::vector<std::pair<const char*, void (*)(Criterion&)>> crits = {
        {"Parameter table reproduction (7^2, 9^2, 11^2, 13^2)", criterion1},
        {"Parameter table spot checks over 5^4", criterion2},
        {"Structural parameters", criterion3},
        {"Bound consistency", criterion4},
        {"Recovery properties", criterion5},
        {"Newton arc suite", criterion6},
        {"Elliptic suite", criterion7},
        {"Fiber weight vs naive weight", criterion8},
    };
    for (const auto& fc : kTableFields) g_table.push_back(resolve(fc));
    g_large = resolve(kLargeField);

    std::size_t unexplained = 0, failed = 0;
    for (std::size_t i = 0; i < crits.size(); ++i) {
        Criterion c;
        c.title = crits[i].first;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            crits[i].second(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = c.failures.empty();
        failed += !pass;
        unexplained += c.unexplained;
        std::printf("%s criterion %zu: %s (%.1fs)\n", pass ? "PASS" : "FAIL", i + 1, c.title.c_str(), secs);
        for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
        for (const auto& d : c.failures) std::printf("    failed: %s\n", d.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu of %zu criteria passed; %zu unexplained sub-check failures\n", crits.size() - failed, crits.size(),
                unexplained);
    return unexplained == 0 ? 0 : 1;
}
