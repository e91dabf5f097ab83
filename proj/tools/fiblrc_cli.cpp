#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fiblrc/elliptic_verify.hpp"
#include "fiblrc/error.hpp"
#include "fiblrc/harness.hpp"
#include "fiblrc/newton_arc.hpp"
#include "fiblrc/profile_io.hpp"
#include "fiblrc/recovery.hpp"

using namespace fiblrc;
using io::json;

namespace {

struct Globals {
    std::string field;
    unsigned r = 3;
    std::optional<std::uint64_t> q;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string profile;
    std::string orbits;
};

class UsageError : public Error {
public:
    using Error::Error;
};

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty())
        std::cout << text;
    else
        io::write_text_file(g.out, text);
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoul(item));
        } catch (const std::exception&) {
            throw UsageError("bad index '" + item + "'");
        }
    }
    return out;
}

construction::SurfaceParams params_from(const Globals& g) {
    if (g.field.empty()) throw UsageError("--field is required");
    return construction::SurfaceParams::make(gf::parse_field(g.field), g.r, g.q);
}

// Evaluation set from --profile, or from --field/--r/--orbits (all orbits by default).
construction::EvaluationSet evaluation_set_from(const Globals& g) {
    if (!g.profile.empty()) return io::evaluation_set_for(io::profile_from_json(io::read_json_file(g.profile)));
    const auto sp = params_from(g);
    auto idx = parse_index_list(g.orbits);
    if (g.orbits.empty()) {
        const auto count = construction::find_nice_orbits(sp).size();
        for (std::size_t k = 0; k < count; ++k) idx.push_back(k);
    }
    return construction::build_evaluation_set(sp, idx);
}

std::string element_str(const gf::Field& f, gf::Raw a) {
    return a == 0 ? "0" : "w^" + std::to_string(*f.log(a));
}

std::string poly_str(const poly::UniPoly& p) {
    const auto& f = *p.field();
    std::string s;
    for (int d = p.degree(); d >= 0; --d) {
        const gf::Raw c = p.coeff(d);
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        const bool unit = c == 1 && d > 0;
        if (!unit) s += f.degree() == 1 ? std::to_string(c) : element_str(f, c);
        if (d > 0) s += (unit ? "" : "*") + std::string("T") + (d > 1 ? "^" + std::to_string(d) : "");
    }
    return s.empty() ? "0" : s;
}

int cmd_construct(const Globals& g, bool skip_distance, bool with_points, const std::string& codeword_out) {
    const auto es = evaluation_set_from(g);
    if (!codeword_out.empty()) {
        // Codeword of a message drawn from --seed, for feeding `recover`.
        const auto gm = lrc::generator_matrix(es);
        const auto& f = *es.params().field;
        std::mt19937_64 rng(g.seed);
        std::vector<gf::Raw> msg(gm.rows());
        for (auto& v : msg) v = static_cast<gf::Raw>(harness::uniform_below(rng, f.order()));
        io::write_text_file(codeword_out, io::codeword_to_json(f, lrc::encode(gm, msg)).dump(2) + "\n");
    }
    std::optional<lrc::DistanceResult> dist;
    if (!skip_distance) {
        lrc::DistanceOptions opts;
        opts.threads = g.threads;
        dist = lrc::min_distance(es, lrc::generator_matrix(es), opts);
    }
    auto j = io::profile_to_json(lrc::make_profile(es, dist));
    if (with_points) j["evaluation_set"] = io::evaluation_set_to_json(es);
    emit(g, j.dump(2) + "\n");
    return 0;
}

int cmd_table(const Globals& g, std::optional<std::size_t> max_subsets) {
    harness::TableOptions opts;
    opts.max_subsets = max_subsets;
    opts.threads = g.threads;
    emit(g, harness::table_csv(harness::run_table(params_from(g), opts)));
    return 0;
}

int cmd_mindist(const Globals& g, std::optional<std::uint64_t> budget) {
    const auto es = evaluation_set_from(g);
    lrc::DistanceOptions opts;
    opts.threads = g.threads;
    opts.budget = budget;
    const auto res = lrc::min_distance(es, lrc::generator_matrix(es), opts);
    const auto& f = *es.params().field;
    json j;
    j["schema"] = io::kSchema;
    j["kind"] = "distance";
    j["n"] = es.size();
    j["d"] = res.d;
    j["exact"] = res.exact;
    j["classes_enumerated"] = res.classes_enumerated;
    json w = json::array();
    for (auto a : res.witness) w.push_back(io::element_to_json(f, a));
    j["witness"] = w;
    emit(g, j.dump(2) + "\n");
    return 0;
}

std::set<std::size_t> parse_erasures(const construction::EvaluationSet& es, const std::string& text) {
    std::set<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto parts = parse_index_list(item);
        if (parts.size() != 3) throw UsageError("erasure '" + item + "' is not l,i,j");
        out.insert(es.index({parts[0], parts[1], parts[2]}));
    }
    return out;
}

int cmd_recover(const Globals& g, const std::string& codeword_path, const std::string& erasures) {
    if (g.profile.empty()) throw UsageError("--profile is required");
    const auto es = evaluation_set_from(g);
    const auto& f = *es.params().field;
    const auto word = io::codeword_from_json(f, io::read_json_file(codeword_path));
    auto erased = recovery::erase(word, parse_erasures(es, erasures));
    const auto res = recovery::repair(es, erased);
    json j;
    j["schema"] = io::kSchema;
    j["kind"] = "repair";
    json syms = json::array();
    for (const auto& s : res.word) syms.push_back(s ? io::element_to_json(f, *s) : json(nullptr));
    j["symbols"] = syms;
    json steps = json::array();
    for (const auto& st : res.steps) {
        const auto c = es.coords(st.index);
        steps.push_back({{"index", st.index},
                         {"l", c.l},
                         {"i", c.i},
                         {"j", c.j},
                         {"path", st.path == recovery::Path::Horizontal ? "H" : "V"},
                         {"round", st.round}});
    }
    j["steps"] = steps;
    j["unrecovered"] = res.unrecovered;
    emit(g, j.dump(2) + "\n");
    return res.unrecovered.empty() ? 0 : 1;
}

int cmd_simulate(const Globals& g, std::size_t failures, std::size_t trials, bool group, const std::string& nodes) {
    const auto es = evaluation_set_from(g);
    harness::StorageScenario sc;
    sc.failures = failures;
    sc.trials = trials;
    sc.seed = g.seed;
    sc.group_by_fiber = group;
    if (!nodes.empty()) {
        const auto list = parse_index_list(nodes);
        sc.fixed_nodes = std::set<std::size_t>(list.begin(), list.end());
    }
    const auto rep = harness::run_simulation(es, lrc::generator_matrix(es), sc);
    emit(g, io::sim_report_to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_verify_newton(const Globals& g) {
    const auto sp = params_from(g);
    const auto vt = newton::splitting_at_infinity(sp);
    std::ostringstream os;
    os << "field " << sp.field->describe() << ", r = " << sp.r << "\n";
    os << "support set at (t = inf):";
    for (const auto& p : vt.support.points) os << " (" << p.i << "," << p.v << ")";
    os << "\n";
    for (std::size_t s = 0; s < vt.segments.size(); ++s) {
        const auto& seg = vt.segments[s];
        const auto& data = vt.segment_data[s];
        os << "L" << s + 1 << ": (" << seg.start.i << "," << seg.start.v << ")-(" << seg.end.i << "," << seg.end.v
           << ") slope " << seg.slope.str() << ", gamma = " << poly_str(data.gamma) << ", delta = " << poly_str(data.delta)
           << " =";
        for (const auto& fac : data.factors) {
            os << " (" << poly_str(fac.poly) << ")";
            if (fac.multiplicity > 1) os << "^" << fac.multiplicity;
        }
        os << (data.squarefree ? "" : " [not squarefree]") << "\n";
    }
    os << "case " << vt.case_id << " (-1 is " << (vt.case_id == 1 ? "" : "not ") << "a square)\n";
    for (const auto& pl : vt.places)
        os << pl.name << ": e=" << pl.e << " f=" << pl.f << " v(t)=" << pl.v_t << " v(x)=" << pl.v_x << "\n";
    const auto ex = newton::basis_extremes(vt);
    os << "max pole degree " << ex.max_pole_degree << " at x^" << ex.max_i << " t^" << ex.max_j << "\n";
    os << "min v_P1 " << ex.min_v_p1 << " at x^" << ex.min_i << " t^" << ex.min_j << "\n";
    os << "bound d >= n - " << ex.max_pole_degree - ex.min_v_p1 << "\n";
    emit(g, os.str());
    return 0;
}

int cmd_verify_elliptic(const Globals& g) {
    const auto es = evaluation_set_from(g);
    const auto& f = *es.params().field;
    std::ostringstream os;
    bool ok = true;
    for (std::size_t l = 0; l < es.b(); ++l) {
        for (std::size_t j = 0; j < es.side(); ++j) {
            bool v = false, nodal = false;
            try {
                v = elliptic::verify_vertical_sum(es, l, j);
            } catch (const SingularFiber&) {
                nodal = true;
                v = elliptic::vertical_sum_smooth_locus(es, l, j).infinity;
            }
            ok = ok && v;
            os << "vertical l=" << l << " j=" << j << " t=" << element_str(f, es.t_value(l, j)) << ": "
               << (nodal ? "nodal fiber, " : "") << "sum " << (v ? "= O" : "!= O") << "\n";
        }
        for (std::size_t i = 0; i < es.side(); ++i) {
            try {
                const auto hc = elliptic::horizontal_check(es, l, i);
                ok = ok && hc.two_torsion;
                os << "horizontal l=" << l << " i=" << i << " x=" << element_str(f, hc.xbar)
                   << ": c square, sum " << (hc.sum.infinity ? "O" : "affine") << ", "
                   << (hc.two_torsion ? "2-torsion" : "NOT 2-torsion") << "\n";
            } catch (const NonSquareTwist&) {
                ok = false;
                os << "horizontal l=" << l << " i=" << i << ": c = x - x^2 is not a square\n";
            }
        }
    }
    const auto prof = elliptic::discriminant_profile(es.params().field);
    os << "discriminant places:";
    for (const auto& pl : prof.places) os << " " << pl.place << ":" << pl.order;
    os << " (total " << prof.total() << ")\n";
    const bool disc_ok = prof.orders() == std::vector<unsigned>{8, 8, 2, 2, 2, 2} && prof.total() == 24;
    os << (ok && disc_ok ? "all checks passed" : "CHECK FAILED") << "\n";
    emit(g, os.str());
    if (!(ok && disc_ok)) throw InvariantViolation("elliptic checks failed");
    return 0;
}

int cmd_verify_invariants(const Globals& g) {
    const auto es = evaluation_set_from(g);
    const auto gm = lrc::generator_matrix(es);
    const auto& f = *es.params().field;
    const unsigned r = es.r();
    std::ostringstream os;
    os << "n = " << es.size() << " (b(r+1)^2 = " << es.b() * es.side() * es.side() << ")\n";
    os << "k = " << gm.rows() << " (rank checked)\n";
    lrc::DistanceOptions opts;
    opts.threads = g.threads;
    const auto dist = lrc::min_distance(es, gm, opts);
    const long n = static_cast<long>(es.size()), d = static_cast<long>(dist.d);
    os << "d = " << d << (dist.exact ? "" : " (upper bound)") << "\n";
    if (es.b() == 1) {
        const auto w = lrc::naive_weight(gm, lrc::f_min_message(es));
        os << "f_min weight = " << w << "\n";
        if (dist.exact && d != lrc::distance_b1(r)) throw InvariantViolation("b = 1 but d != 8");
        if (static_cast<long>(w) != lrc::distance_b1(r)) throw InvariantViolation("f_min weight is not 8");
    } else {
        const long lo = lrc::distance_lower_bound(n, r), hi = n - static_cast<long>(r * r - 4);
        os << "bounds " << lo << " <= d <= " << hi << ", gap d - Delta = " << d - lo << "\n";
        if (dist.exact && (d < lo || d > hi)) throw InvariantViolation("distance outside its bounds");
    }
    std::mt19937_64 rng(g.seed);
    std::vector<gf::Raw> msg(gm.rows());
    for (auto& v : msg) v = static_cast<gf::Raw>(harness::uniform_below(rng, f.order()));
    const auto cw = lrc::encode(gm, msg);
    for (std::size_t idx = 0; idx < es.size(); ++idx) {
        const auto w = recovery::erase(cw, {idx});
        const auto c = es.coords(idx);
        if (recovery::recover_horizontal(es, w, c) != cw[idx] || recovery::recover_vertical(es, w, c) != cw[idx])
            throw InvariantViolation("local recovery failed at symbol " + std::to_string(idx));
    }
    os << "single-erasure recovery ok on all " << es.size() << " positions\n";
    emit(g, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Locally recoverable codes with availability 2 from fibered surfaces"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "field as p, p^m or p^m/c0,...,1");
    app.add_option("--r", g.r, "locality (odd, >= 3)");
    app.add_option("--q", g.q, "base field order q (default: smallest admissible)");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "RNG seed (mt19937_64)");
    app.add_option("--out", g.out, "write output to this file");

    auto* construct = app.add_subcommand("construct", "build a code and print its profile");
    bool skip_distance = false, with_points = false;
    construct->add_option("--orbits", g.orbits, "comma-separated orbit indices (default all)");
    construct->add_flag("--skip-distance", skip_distance, "do not compute d");
    construct->add_flag("--points", with_points, "include the evaluation set");
    std::string codeword_out;
    construct->add_option("--codeword", codeword_out, "also write the codeword of a random message (from --seed)");

    auto* table = app.add_subcommand("table", "reproduce the parameter table as CSV");
    std::optional<std::size_t> max_subsets;
    table->add_option("--max-subsets", max_subsets, "cap on orbit subsets");

    auto* mindist = app.add_subcommand("mindist", "exact minimum distance");
    std::optional<std::uint64_t> budget;
    mindist->add_option("--profile", g.profile, "profile JSON");
    mindist->add_option("--orbits", g.orbits, "comma-separated orbit indices (default all)");
    mindist->add_option("--budget", budget, "cap on enumerated projective classes");

    auto* recover = app.add_subcommand("recover", "repair erased symbols of a codeword");
    std::string codeword_path, erasures;
    recover->add_option("--profile", g.profile, "profile JSON")->required();
    recover->add_option("--codeword", codeword_path, "codeword JSON")->required();
    recover->add_option("--erase", erasures, "erasures as \"l,i,j;l,i,j\"")->required();

    auto* simulate = app.add_subcommand("simulate", "storage failure simulation");
    std::size_t failures = 1, trials = 100;
    bool group = false;
    std::string nodes;
    simulate->add_option("--profile", g.profile, "profile JSON");
    simulate->add_option("--orbits", g.orbits, "comma-separated orbit indices (default all)");
    simulate->add_option("--failures", failures, "simultaneous node failures per trial");
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--nodes", nodes, "fail exactly these comma-separated nodes");
    simulate->add_flag("--group-by-fiber", group, "store each vertical fiber on one node");

    auto* verify = app.add_subcommand("verify", "invariant checks");
    verify->require_subcommand(1);
    auto* v_newton = verify->add_subcommand("newton", "Newton arc at t = infinity");
    auto* v_elliptic = verify->add_subcommand("elliptic", "group-law and discriminant checks (r = 3)");
    v_elliptic->add_option("--profile", g.profile, "profile JSON");
    v_elliptic->add_option("--orbits", g.orbits, "comma-separated orbit indices (default all)");
    auto* v_inv = verify->add_subcommand("invariants", "structural code invariants");
    v_inv->add_option("--profile", g.profile, "profile JSON");
    v_inv->add_option("--orbits", g.orbits, "comma-separated orbit indices (default all)");
    verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*construct) return cmd_construct(g, skip_distance, with_points, codeword_out);
        if (*table) return cmd_table(g, max_subsets);
        if (*mindist) return cmd_mindist(g, budget);
        if (*recover) return cmd_recover(g, codeword_path, erasures);
        if (*simulate) return cmd_simulate(g, failures, trials, group, nodes);
        if (*v_newton) return cmd_verify_newton(g);
        if (*v_elliptic) return cmd_verify_elliptic(g);
        if (*v_inv) return cmd_verify_invariants(g);
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
