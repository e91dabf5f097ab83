#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fiblrc/lrc_code.hpp"
#include "fiblrc/recovery.hpp"

using namespace fiblrc;
using namespace fiblrc::recovery;
using construction::PointIndex;
using gf::Raw;

namespace {

struct Code {
    construction::EvaluationSet es;
    lrc::GeneratorMatrix gm;
};

Code make_code(unsigned p, unsigned m, unsigned r, std::vector<std::size_t> orbits) {
    auto sp = construction::SurfaceParams::make(gf::make_field(p, m), r);
    auto es = construction::build_evaluation_set(sp, orbits);
    auto gm = lrc::generator_matrix(es);
    return {std::move(es), std::move(gm)};
}

std::vector<Raw> random_message(const Code& c, std::mt19937_64& rng) {
    std::uniform_int_distribution<Raw> dist(0, c.es.params().field->order() - 1);
    std::vector<Raw> msg(c.gm.rows());
    for (auto& v : msg) v = dist(rng);
    return msg;
}

// Erasures that cannot be peeled: remove erased positions having a fully
// present fiber one at a time until nothing changes.
std::set<std::size_t> reachability_oracle(std::size_t side, std::size_t n, std::set<std::size_t> erased) {
    const std::size_t sq = side * side;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = erased.begin(); it != erased.end(); ++it) {
            const std::size_t l = *it / sq, i = (*it % sq) / side, j = *it % side;
            bool col_free = true, row_free = true;
            for (std::size_t a = 0; a < side; ++a) {
                if (a != i && erased.count(l * sq + a * side + j)) col_free = false;
                if (a != j && erased.count(l * sq + i * side + a)) row_free = false;
            }
            if (col_free || row_free) {
                erased.erase(it);
                changed = true;
                break;
            }
        }
    }
    for (auto e : erased) EXPECT_LT(e, n);
    return erased;
}

}  // namespace

TEST(Recovery, ZeroCodeword) {
    auto c = make_code(7, 2, 3, {0, 1});
    std::vector<Raw> zero(c.es.size(), 0);
    for (std::size_t idx = 0; idx < c.es.size(); ++idx) {
        auto w = recovery::erase(zero, {idx});
        EXPECT_EQ(recover_vertical(c.es, w, c.es.coords(idx)), 0u);
        EXPECT_EQ(recover_horizontal(c.es, w, c.es.coords(idx)), 0u);
    }
}

TEST(Recovery, SingleHoleRoundTrip) {
    std::mt19937_64 rng(7);
    for (auto [p, m, r, orbits] : {std::tuple{7u, 2u, 3u, std::vector<std::size_t>{0, 1}},
                                   std::tuple{11u, 2u, 3u, std::vector<std::size_t>{0, 1, 2}},
                                   std::tuple{7u, 2u, 5u, std::vector<std::size_t>{0}}}) {
        auto c = make_code(p, m, r, orbits);
        for (int trial = 0; trial < 20; ++trial) {
            const auto cw = lrc::encode(c.gm, random_message(c, rng));
            for (std::size_t idx = 0; idx < c.es.size(); ++idx) {
                auto w = recovery::erase(cw, {idx});
                const auto pi = c.es.coords(idx);
                EXPECT_EQ(recover_vertical(c.es, w, pi), cw[idx]);
                EXPECT_EQ(recover_horizontal(c.es, w, pi), cw[idx]);
            }
        }
    }
}

TEST(Recovery, SecondErasureInVerticalSet) {
    std::mt19937_64 rng(11);
    auto c = make_code(7, 2, 3, {0, 1});
    const auto cw = lrc::encode(c.gm, random_message(c, rng));
    for (std::size_t idx = 0; idx < c.es.size(); ++idx) {
        const auto pi = c.es.coords(idx);
        const auto sets = construction::recovery_indices(c.es, pi.l, pi.i, pi.j);
        for (const auto& other : sets.vertical) {
            auto w = recovery::erase(cw, {idx, c.es.index(other)});
            EXPECT_THROW(recover_vertical(c.es, w, pi), IncompleteRecoverySet);
            EXPECT_EQ(recover_horizontal(c.es, w, pi), cw[idx]);
            auto res = repair(c.es, w);
            EXPECT_TRUE(res.unrecovered.empty());
            for (std::size_t k = 0; k < cw.size(); ++k) EXPECT_EQ(res.word[k], cw[k]);
            for (const auto& s : res.steps) EXPECT_EQ(s.path, Path::Horizontal);
        }
    }
}

TEST(Recovery, InconsistentVerticalSymbols) {
    auto c = make_code(7, 2, 3, {0});
    std::vector<Raw> word(c.es.size(), 0);
    // One nonzero symbol among the three present ones: no x g(x) with deg g <= 1 fits.
    word[c.es.index({0, 1, 0})] = 1;
    auto w = recovery::erase(word, {c.es.index({0, 0, 0})});
    EXPECT_THROW(recover_vertical(c.es, w, {0, 0, 0}), InconsistentSymbols);
}

TEST(Recovery, LengthAndRangeErrors) {
    auto c = make_code(7, 2, 3, {0});
    ErasedWord shortw(c.es.size() - 1, Raw{0});
    EXPECT_THROW(recover_vertical(c.es, shortw, {0, 0, 0}), LengthMismatch);
    EXPECT_THROW(repair(c.es, shortw), LengthMismatch);
    std::vector<Raw> zero(c.es.size(), 0);
    EXPECT_THROW(recovery::erase(zero, {c.es.size()}), IndexOutOfRange);
    ErasedWord w(zero.begin(), zero.end());
    EXPECT_THROW(recover_horizontal(c.es, w, {1, 0, 0}), IndexOutOfRange);
}

TEST(Recovery, CrossPatternMatchesOracle) {
    std::mt19937_64 rng(5);
    auto c = make_code(7, 2, 3, {0, 1});
    const auto cw = lrc::encode(c.gm, random_message(c, rng));
    const std::size_t side = c.es.side();
    // Whole vertical fiber j plus whole horizontal fiber i in orbit 0.
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            std::set<std::size_t> erased;
            for (std::size_t a = 0; a < side; ++a) {
                erased.insert(c.es.index({0, a, j}));
                erased.insert(c.es.index({0, i, a}));
            }
            ASSERT_EQ(erased.size(), 2 * side - 1);
            auto res = repair(c.es, recovery::erase(cw, erased));
            EXPECT_EQ(res.unrecovered, reachability_oracle(side, c.es.size(), erased));
            for (std::size_t k = 0; k < cw.size(); ++k)
                if (!res.unrecovered.count(k)) EXPECT_EQ(res.word[k], cw[k]);
        }
}

TEST(Recovery, RandomPatternsMatchOracle) {
    std::mt19937_64 rng(99);
    auto c = make_code(11, 2, 3, {0, 1, 2});
    const auto cw = lrc::encode(c.gm, random_message(c, rng));
    std::uniform_int_distribution<std::size_t> pos(0, c.es.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<std::size_t> erased;
        const std::size_t count = 1 + trial % 20;
        while (erased.size() < count) erased.insert(pos(rng));
        auto res = repair(c.es, recovery::erase(cw, erased));
        EXPECT_EQ(res.unrecovered, reachability_oracle(c.es.side(), c.es.size(), erased));
        EXPECT_LE(res.rounds, c.es.size());
        std::set<std::size_t> repaired;
        for (const auto& s : res.steps) {
            EXPECT_TRUE(erased.count(s.index));
            EXPECT_TRUE(repaired.insert(s.index).second);
            EXPECT_LT(s.round, res.rounds);
        }
        EXPECT_EQ(repaired.size() + res.unrecovered.size(), erased.size());
        for (std::size_t k = 0; k < cw.size(); ++k)
            if (!res.unrecovered.count(k)) EXPECT_EQ(res.word[k], cw[k]);
    }
}

TEST(Recovery, EverythingErasedIsBlocked) {
    auto c = make_code(7, 2, 3, {0});
    std::vector<Raw> zero(c.es.size(), 0);
    std::set<std::size_t> all;
    for (std::size_t k = 0; k < c.es.size(); ++k) all.insert(k);
    auto res = repair(c.es, recovery::erase(zero, all));
    EXPECT_EQ(res.unrecovered, all);
    EXPECT_EQ(res.rounds, 0u);
    EXPECT_TRUE(res.steps.empty());
}
