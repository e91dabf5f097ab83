#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "fiblrc/construction.hpp"

namespace fiblrc::recovery {

using construction::EvaluationSet;
using construction::PointIndex;
using gf::Raw;

// A codeword with erased positions set to nullopt.
using ErasedWord = std::vector<std::optional<Raw>>;

ErasedWord erase(const std::vector<Raw>& word, const std::set<std::size_t>& positions);

// Recover the symbol at target from the r other symbols on its vertical
// fiber (same l, j). On that fiber the codeword is x * g(x) with deg g <= r-2,
// so g is interpolated from r-1 of the nodes and checked against the last.
Raw recover_vertical(const EvaluationSet& es, const ErasedWord& word, const PointIndex& target);

// Recover from the r other symbols on its horizontal fiber (same l, i): a
// polynomial of degree <= r-1 in t through r nodes.
Raw recover_horizontal(const EvaluationSet& es, const ErasedWord& word, const PointIndex& target);

enum class Path { Horizontal, Vertical };

struct RepairStep {
    std::size_t index;
    Path path;
    unsigned round;
};

struct RepairResult {
    ErasedWord word;
    std::set<std::size_t> unrecovered;
    std::vector<RepairStep> steps;
    unsigned rounds = 0;
};

// Peeling decoder. Each round reads only symbols present at the start of the
// round; erased positions are visited in ascending index order and the
// vertical path is tried before the horizontal one.
RepairResult repair(const EvaluationSet& es, const ErasedWord& word);

}  // namespace fiblrc::recovery
