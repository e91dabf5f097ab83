#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fiblrc/lrc_code.hpp"

namespace fiblrc::harness {

using construction::EvaluationSet;
using gf::FieldPtr;

struct TableRow {
    std::uint64_t q = 0;
    unsigned m = 0;
    std::size_t b = 0, n = 0;
    std::optional<long> delta;  // empty for b = 1
    std::size_t d = 0;
    std::vector<std::size_t> orbits;
};

struct TableOptions {
    std::optional<std::size_t> max_subsets;
    unsigned threads = 1;
};

// All nonempty orbit subsets ordered by size and then lexicographically.
std::vector<std::vector<std::size_t>> orbit_subsets(std::size_t count);

// One row per orbit subset with the exact minimum distance. Throws
// InvariantViolation when a row breaks the distance bounds.
std::vector<TableRow> run_table(const construction::SurfaceParams& params, const TableOptions& opts = {});
// Columns q,m,b,n,delta,d,orbits.
std::string table_csv(const std::vector<TableRow>& rows);

// Uniform integer in [0, bound) by rejection; the same on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

struct StorageScenario {
    std::size_t failures = 1;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    // One node per vertical fiber (l, j) instead of one per symbol.
    bool group_by_fiber = false;
    // Fail exactly these nodes in every trial instead of sampling.
    std::optional<std::set<std::size_t>> fixed_nodes;
};

struct TrialOutcome {
    std::vector<std::size_t> failed_nodes;
    std::size_t erased = 0, repaired = 0, unrecovered = 0;
    std::size_t reads = 0, horizontal = 0, vertical = 0;
    bool success = false;
};

struct SimReport {
    StorageScenario scenario;
    std::size_t nodes = 0;
    std::vector<TrialOutcome> trials;
    std::size_t erased = 0, repaired = 0, unrecovered = 0;
    std::size_t reads = 0, horizontal = 0, vertical = 0;
    double success_rate = 0;
    double reads_per_repair = 0;
};

// Symbols stored on each node.
std::vector<std::vector<std::size_t>> node_map(const EvaluationSet& es, bool group_by_fiber);

SimReport run_simulation(const EvaluationSet& es, const lrc::GeneratorMatrix& gm, const StorageScenario& sc);

}  // namespace fiblrc::harness
