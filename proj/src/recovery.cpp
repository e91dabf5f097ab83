#include "fiblrc/recovery.hpp"

#include "fiblrc/poly.hpp"

namespace fiblrc::recovery {

namespace {

void check_length(const EvaluationSet& es, const ErasedWord& word) {
    if (word.size() != es.size())
        throw LengthMismatch("word length " + std::to_string(word.size()) + " != n = " + std::to_string(es.size()));
}

}  // namespace

ErasedWord erase(const std::vector<Raw>& word, const std::set<std::size_t>& positions) {
    ErasedWord out(word.begin(), word.end());
    for (auto p : positions) {
        if (p >= out.size()) throw IndexOutOfRange("erasure position out of range");
        out[p].reset();
    }
    return out;
}

Raw recover_vertical(const EvaluationSet& es, const ErasedWord& word, const PointIndex& target) {
    check_length(es, word);
    const auto& fp = es.params().field;
    const auto& f = *fp;
    es.index(target);
    std::vector<Raw> nodes, values;
    for (const auto& pi : construction::recovery_indices(es, target.l, target.i, target.j).vertical) {
        const auto& sym = word[es.index(pi)];
        if (!sym) throw IncompleteRecoverySet("vertical recovery set has an erased symbol");
        const Raw x = es.point(es.index(pi)).x;
        nodes.push_back(x);
        values.push_back(f.div(*sym, x));
    }
    const Raw check_node = nodes.back(), check_value = values.back();
    nodes.pop_back();
    values.pop_back();
    const poly::UniPoly g = poly::interpolate(fp, nodes, values);
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (poly::p_eval(g, nodes[k]) != values[k]) throw SingularSystem("vertical interpolation residual is nonzero");
    if (poly::p_eval(g, check_node) != check_value)
        throw InconsistentSymbols("vertical recovery set is not consistent with a codeword");
    const Raw x = es.point(es.index(target)).x;
    return f.mul(x, poly::p_eval(g, x));
}

Raw recover_horizontal(const EvaluationSet& es, const ErasedWord& word, const PointIndex& target) {
    check_length(es, word);
    const auto& fp = es.params().field;
    es.index(target);
    std::vector<Raw> nodes, values;
    for (const auto& pi : construction::recovery_indices(es, target.l, target.i, target.j).horizontal) {
        const auto& sym = word[es.index(pi)];
        if (!sym) throw IncompleteRecoverySet("horizontal recovery set has an erased symbol");
        nodes.push_back(es.point(es.index(pi)).t);
        values.push_back(*sym);
    }
    const poly::UniPoly d = poly::interpolate(fp, nodes, values);
    for (std::size_t k = 0; k < nodes.size(); ++k)
        if (poly::p_eval(d, nodes[k]) != values[k]) throw SingularSystem("horizontal interpolation residual is nonzero");
    return poly::p_eval(d, es.point(es.index(target)).t);
}

RepairResult repair(const EvaluationSet& es, const ErasedWord& word) {
    check_length(es, word);
    RepairResult result;
    result.word = word;
    for (std::size_t idx = 0; idx < word.size(); ++idx)
        if (!word[idx]) result.unrecovered.insert(idx);

    auto complete = [&](const ErasedWord& w, const std::vector<PointIndex>& set) {
        for (const auto& pi : set)
            if (!w[es.index(pi)]) return false;
        return true;
    };

    while (!result.unrecovered.empty()) {
        const ErasedWord snapshot = result.word;
        std::vector<std::size_t> fixed;
        for (std::size_t idx : result.unrecovered) {
            const PointIndex pi = es.coords(idx);
            const auto sets = construction::recovery_indices(es, pi.l, pi.i, pi.j);
            if (complete(snapshot, sets.vertical)) {
                result.word[idx] = recover_vertical(es, snapshot, pi);
                result.steps.push_back({idx, Path::Vertical, result.rounds});
            } else if (complete(snapshot, sets.horizontal)) {
                result.word[idx] = recover_horizontal(es, snapshot, pi);
                result.steps.push_back({idx, Path::Horizontal, result.rounds});
            } else {
                continue;
            }
            fixed.push_back(idx);
        }
        if (fixed.empty()) break;
        for (auto idx : fixed) result.unrecovered.erase(idx);
        ++result.rounds;
    }
    return result;
}

}  // namespace fiblrc::recovery
