#include "fiblrc/harness.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "fiblrc/error.hpp"
#include "fiblrc/recovery.hpp"

namespace fiblrc::harness {

std::vector<std::vector<std::size_t>> orbit_subsets(std::size_t count) {
    std::vector<std::vector<std::size_t>> out;
    // For each size, combinations come out in lexicographic order.
    for (std::size_t b = 1; b <= count; ++b) {
        std::vector<std::size_t> comb(b);
        for (std::size_t k = 0; k < b; ++k) comb[k] = k;
        for (;;) {
            out.push_back(comb);
            std::size_t k = b;
            while (k > 0 && comb[k - 1] == count - b + k - 1) --k;
            if (k == 0) break;
            ++comb[k - 1];
            for (std::size_t a = k; a < b; ++a) comb[a] = comb[a - 1] + 1;
        }
    }
    return out;
}

std::vector<TableRow> run_table(const construction::SurfaceParams& params, const TableOptions& opts) {
    if (params.field->order() > gf::kTableLimit) throw FieldTooLarge("table needs a field of order at most 2^20");
    const auto orbits = construction::find_nice_orbits(params);
    auto subsets = orbit_subsets(orbits.size());
    if (opts.max_subsets && subsets.size() > *opts.max_subsets) subsets.resize(*opts.max_subsets);
    const long r = params.r;
    std::vector<TableRow> rows;
    for (const auto& sub : subsets) {
        auto es = construction::build_evaluation_set(params, orbits, sub);
        auto gm = lrc::generator_matrix(es);
        lrc::DistanceOptions dopts;
        dopts.threads = opts.threads;
        const auto dist = lrc::min_distance(es, gm, dopts);
        TableRow row{params.q, params.m, sub.size(), es.size(), std::nullopt, dist.d, sub};
        const long n = static_cast<long>(row.n), d = static_cast<long>(row.d);
        if (row.b == 1) {
            if (d != lrc::distance_b1(params.r)) throw InvariantViolation("b = 1 code with d = " + std::to_string(d));
        } else {
            row.delta = lrc::distance_lower_bound(n, r);
            if (d < *row.delta || d > n - (r * r - 4))
                throw InvariantViolation("d = " + std::to_string(d) + " outside [" + std::to_string(*row.delta) + ", " +
                                         std::to_string(n - (r * r - 4)) + "]");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "q,m,b,n,delta,d,orbits\n";
    for (const auto& row : rows) {
        os << row.q << ',' << row.m << ',' << row.b << ',' << row.n << ',';
        if (row.delta) os << *row.delta;
        os << ',' << row.d << ',';
        for (std::size_t k = 0; k < row.orbits.size(); ++k) os << (k ? " " : "") << row.orbits[k];
        os << '\n';
    }
    return os.str();
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw BadScenario("empty sampling range");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % bound + 1) % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v > limit);
    return v % bound;
}

std::vector<std::vector<std::size_t>> node_map(const EvaluationSet& es, bool group_by_fiber) {
    std::vector<std::vector<std::size_t>> nodes;
    if (!group_by_fiber) {
        for (std::size_t idx = 0; idx < es.size(); ++idx) nodes.push_back({idx});
        return nodes;
    }
    for (std::size_t l = 0; l < es.b(); ++l)
        for (std::size_t j = 0; j < es.side(); ++j) {
            std::vector<std::size_t> syms;
            for (std::size_t i = 0; i < es.side(); ++i) syms.push_back(es.index({l, i, j}));
            nodes.push_back(std::move(syms));
        }
    return nodes;
}

SimReport run_simulation(const EvaluationSet& es, const lrc::GeneratorMatrix& gm, const StorageScenario& sc) {
    const auto nodes = node_map(es, sc.group_by_fiber);
    if (sc.trials == 0) throw BadScenario("at least one trial is required");
    if (sc.fixed_nodes) {
        if (sc.fixed_nodes->empty()) throw BadScenario("empty node list");
        for (auto nd : *sc.fixed_nodes)
            if (nd >= nodes.size()) throw BadScenario("node " + std::to_string(nd) + " does not exist");
    } else if (sc.failures == 0 || sc.failures > nodes.size()) {
        throw BadScenario("failure count must be in [1, " + std::to_string(nodes.size()) + "]");
    }
    const auto& f = *es.params().field;
    std::mt19937_64 rng(sc.seed);
    SimReport rep;
    rep.scenario = sc;
    rep.nodes = nodes.size();
    std::size_t successes = 0;
    for (std::size_t trial = 0; trial < sc.trials; ++trial) {
        std::vector<gf::Raw> msg(gm.rows());
        for (auto& v : msg) v = static_cast<gf::Raw>(uniform_below(rng, f.order()));
        const auto cw = lrc::encode(gm, msg);

        TrialOutcome out;
        if (sc.fixed_nodes) {
            out.failed_nodes.assign(sc.fixed_nodes->begin(), sc.fixed_nodes->end());
        } else {
            std::vector<std::size_t> perm(nodes.size());
            for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
            for (std::size_t k = 0; k < sc.failures; ++k)
                std::swap(perm[k], perm[k + uniform_below(rng, perm.size() - k)]);
            out.failed_nodes.assign(perm.begin(), perm.begin() + static_cast<long>(sc.failures));
            std::sort(out.failed_nodes.begin(), out.failed_nodes.end());
        }
        std::set<std::size_t> erased;
        for (auto nd : out.failed_nodes) erased.insert(nodes[nd].begin(), nodes[nd].end());

        const auto res = recovery::repair(es, recovery::erase(cw, erased));
        for (const auto& step : res.steps) {
            if (res.word[step.index] != cw[step.index])
                throw InvariantViolation("repaired symbol " + std::to_string(step.index) + " differs from the original");
            (step.path == recovery::Path::Horizontal ? out.horizontal : out.vertical)++;
        }
        out.erased = erased.size();
        out.repaired = res.steps.size();
        out.unrecovered = res.unrecovered.size();
        out.reads = out.repaired * es.r();
        out.success = res.unrecovered.empty();
        successes += out.success;
        rep.erased += out.erased;
        rep.repaired += out.repaired;
        rep.unrecovered += out.unrecovered;
        rep.reads += out.reads;
        rep.horizontal += out.horizontal;
        rep.vertical += out.vertical;
        rep.trials.push_back(std::move(out));
    }
    rep.success_rate = static_cast<double>(successes) / static_cast<double>(sc.trials);
    rep.reads_per_repair = rep.repaired ? static_cast<double>(rep.reads) / static_cast<double>(rep.repaired) : 0.0;
    return rep;
}

}  // namespace fiblrc::harness
