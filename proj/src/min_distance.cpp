// Exact minimum distance by projective enumeration.
//
// Messages are split as (outer | inner | free) where free is the last
// coordinate. For a fixed (outer, inner) pair the codeword vanishes at P iff
// free = h(P) := -(sum of the other terms at P) / m(P), with m the last basis
// monomial (nonzero at every evaluation point). The best choice of the free
// coordinate is therefore the most frequent value of h, which replaces a
// loop over Q candidates by one counting pass over the n points.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "fiblrc/lrc_code.hpp"

namespace fiblrc::lrc {

namespace {

struct TableAdd {
    const std::uint16_t* table;
    std::size_t q;
    Raw operator()(Raw a, Raw b) const { return table[a * q + b]; }
};

struct FieldAdd {
    const gf::Field* f;
    Raw operator()(Raw a, Raw b) const { return f->add(a, b); }
};

struct ChunkBest {
    std::size_t weight = std::numeric_limits<std::size_t>::max();
    std::vector<std::uint32_t> keys;  // witness as canonical keys
    std::uint64_t classes = 0;
};

bool lex_less(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void offer(ChunkBest& best, std::size_t weight, const std::vector<std::uint32_t>& keys) {
    if (weight < best.weight || (weight == best.weight && lex_less(keys, best.keys))) {
        best.weight = weight;
        best.keys = keys;
    }
}

class Search {
public:
    Search(const EvaluationSet& es, const GeneratorMatrix& gm) : f_(*es.params().field), n_(gm.cols()), k_(gm.rows()) {
        q_ = f_.order();
        outer_len_ = k_ - 2;
        // w[s][P] = -G[s][P] / G[k-1][P]
        w_.assign(k_ - 1, std::vector<Raw>(n_));
        for (std::size_t p = 0; p < n_; ++p) {
            const Raw last = gm.at(k_ - 1, p);
            if (last == 0) throw InvariantViolation("last basis monomial vanishes at an evaluation point");
            const Raw scale = f_.neg(f_.inv(last));
            for (std::size_t s = 0; s + 1 < k_; ++s) w_[s][p] = f_.mul(gm.at(s, p), scale);
        }
        // inner_[key * n + P] = element(key) * w[k-2][P]
        inner_.resize(q_ * n_);
        for (std::size_t key = 0; key < q_; ++key) {
            const Raw c = f_.from_canonical_key(static_cast<std::uint32_t>(key));
            for (std::size_t p = 0; p < n_; ++p) inner_[key * n_ + p] = f_.mul(c, w_[k_ - 2][p]);
        }
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a + 1; b < n_; ++b) {
                const Raw dw = f_.sub(w_[k_ - 2][a], w_[k_ - 2][b]);
                if (dw == 0) {
                    same_a_.push_back(static_cast<std::uint32_t>(a));
                    same_b_.push_back(static_cast<std::uint32_t>(b));
                } else {
                    pair_a_.push_back(static_cast<std::uint32_t>(a));
                    pair_b_.push_back(static_cast<std::uint32_t>(b));
                    pair_log_inv_.push_back(*f_.log(f_.inv(dw)));
                }
            }
        if (q_ <= 2048) {
            add_.resize(q_ * q_);
            for (Raw a = 0; a < q_; ++a)
                for (Raw b = 0; b < q_; ++b) add_[a * q_ + b] = static_cast<std::uint16_t>(f_.add(a, b));
        }
        // Number of normalized outer prefixes with the leading 1 at position lead.
        for (std::size_t lead = 0; lead < outer_len_; ++lead) {
            long double c = std::pow(static_cast<long double>(q_), static_cast<long double>(outer_len_ - 1 - lead));
            per_lead_.push_back(c > 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(c));
        }
        long double total = 0;
        for (auto c : per_lead_) total += static_cast<long double>(c);
        total_outer_ = total > 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(total);
    }

    std::uint64_t total_outer() const { return total_outer_; }
    std::size_t q() const { return q_; }

    // Outer prefix number g in lexicographic key order.
    std::vector<std::uint32_t> decode(std::uint64_t g) const {
        std::vector<std::uint32_t> keys(outer_len_, 0);
        for (std::size_t lead = outer_len_; lead-- > 0;) {
            if (g >= per_lead_[lead]) {
                g -= per_lead_[lead];
                continue;
            }
            keys[lead] = 1;
            for (std::size_t pos = outer_len_; pos-- > lead + 1;) {
                keys[pos] = static_cast<std::uint32_t>(g % q_);
                g /= q_;
            }
            return keys;
        }
        throw IndexOutOfRange("outer prefix index out of range");
    }

    // Classes (0..0, 0, 1) and (0..0, 1, *).
    void run_zero_outer(ChunkBest& best) const {
        std::vector<std::uint32_t> keys(k_, 0);
        keys[k_ - 1] = 1;
        offer(best, n_, keys);
        std::vector<Raw> base(n_, 0);
        run_row_range(base, keys, 1, 2, best);
        best.classes += 1 + q_;
    }

    void run_outer(std::uint64_t g, ChunkBest& best, std::size_t inner_limit) const {
        std::vector<std::uint32_t> keys = decode(g);
        std::vector<Raw> base(n_, 0);
        for (std::size_t s = 0; s < outer_len_; ++s) {
            if (!keys[s]) continue;
            const Raw c = f_.from_canonical_key(keys[s]);
            for (std::size_t p = 0; p < n_; ++p) base[p] = f_.add(base[p], f_.mul(c, w_[s][p]));
        }
        keys.resize(k_, 0);
        best.classes += static_cast<std::uint64_t>(inner_limit) * q_;

        // Pair filter: points P, P' with distinct inner weights agree for
        // exactly one inner value, c = (base[P'] - base[P]) / (w[P] - w[P']).
        // A row whose most frequent value has multiplicity mu needs at least
        // mu(mu-1)/2 agreeing pairs, so rows with too few are skipped.
        thread_local std::vector<std::uint32_t> pairs_at;
        pairs_at.assign(q_, 0);
        const std::uint32_t* log = f_.log_table().data();
        const Raw* exp = f_.exp_table().data();
        if (!add_.empty()) {
            std::vector<Raw> neg_base(n_);
            for (std::size_t p = 0; p < n_; ++p) neg_base[p] = f_.neg(base[p]);
            const std::uint16_t* add = add_.data();
            for (std::size_t e = 0; e < pair_a_.size(); ++e) {
                const Raw diff = add[base[pair_b_[e]] * q_ + neg_base[pair_a_[e]]];
                ++pairs_at[diff ? exp[log[diff] + pair_log_inv_[e]] : 0];
            }
        } else {
            for (std::size_t e = 0; e < pair_a_.size(); ++e) {
                const Raw diff = f_.sub(base[pair_b_[e]], base[pair_a_[e]]);
                ++pairs_at[diff ? exp[log[diff] + pair_log_inv_[e]] : 0];
            }
        }
        std::uint32_t always = 0;
        for (std::size_t e = 0; e < same_a_.size(); ++e) always += base[same_a_[e]] == base[same_b_[e]];

        for (std::size_t key = 0; key < inner_limit; ++key) {
            if (best.weight <= n_) {
                const std::uint64_t mu = n_ - best.weight + 1;
                const Raw c = f_.from_canonical_key(static_cast<std::uint32_t>(key));
                if (pairs_at[c] + always < mu * (mu - 1) / 2) continue;
            }
            run_row_range(base, keys, key, key + 1, best);
        }
    }

private:
    void run_row_range(const std::vector<Raw>& base, std::vector<std::uint32_t>& keys, std::size_t key_lo,
                       std::size_t key_hi, ChunkBest& best) const {
        if (!add_.empty())
            rows(TableAdd{add_.data(), q_}, base, keys, key_lo, key_hi, best);
        else
            rows(FieldAdd{&f_}, base, keys, key_lo, key_hi, best);
    }

    template <class Add>
    void rows(Add add, const std::vector<Raw>& base, std::vector<std::uint32_t>& keys, std::size_t key_lo,
              std::size_t key_hi, ChunkBest& best) const {
        thread_local std::vector<std::uint32_t> stamp, count;
        thread_local std::uint32_t gen = 0;
        if (stamp.size() != q_) {
            stamp.assign(q_, 0);
            count.assign(q_, 0);
            gen = 0;
        }
        for (std::size_t key = key_lo; key < key_hi; ++key) {
            if (++gen == 0) {
                std::fill(stamp.begin(), stamp.end(), 0);
                gen = 1;
            }
            const Raw* row = &inner_[key * n_];
            std::uint32_t top = 0;
            for (std::size_t p = 0; p < n_; ++p) {
                const Raw v = add(base[p], row[p]);
                if (stamp[v] != gen) {
                    stamp[v] = gen;
                    count[v] = 0;
                }
                top = std::max(top, ++count[v]);
            }
            const std::size_t weight = n_ - top;
            // Rows arrive in lexicographic order, so only a strict
            // improvement can change the witness.
            if (weight < best.weight) {
                std::uint32_t free_key = std::numeric_limits<std::uint32_t>::max();
                for (std::size_t p = 0; p < n_; ++p) {
                    const Raw v = add(base[p], row[p]);
                    if (count[v] == top) free_key = std::min(free_key, f_.canonical_key(v));
                }
                keys[k_ - 2] = static_cast<std::uint32_t>(key);
                keys[k_ - 1] = free_key;
                best.weight = weight;
                best.keys = keys;
            }
        }
    }

    const gf::Field& f_;
    std::size_t n_, k_, q_ = 0, outer_len_ = 0;
    std::vector<std::vector<Raw>> w_;
    std::vector<Raw> inner_;
    std::vector<std::uint16_t> add_;
    std::vector<std::uint32_t> pair_a_, pair_b_, pair_log_inv_, same_a_, same_b_;
    std::vector<std::uint64_t> per_lead_;
    std::uint64_t total_outer_ = 0;
};

}  // namespace

DistanceResult min_distance(const EvaluationSet& es, const GeneratorMatrix& gm, const DistanceOptions& opts) {
    const auto& f = *es.params().field;
    if (!f.has_tables()) throw FieldTooLarge("minimum distance search needs field order <= 2^20");
    if (gm.rows() < 3) throw BadLocality("dimension too small for the search layout");
    Search search(es, gm);
    const std::uint64_t q = search.q();
    const std::uint64_t max_u64 = std::numeric_limits<std::uint64_t>::max();
    if (search.total_outer() == max_u64 && !opts.budget)
        throw FieldTooLarge("projective message space too large for exhaustive search; pass a budget");

    ChunkBest head;
    search.run_zero_outer(head);

    // Outer prefixes to visit, and the inner-row cap of the last one.
    std::uint64_t outer_count = search.total_outer();
    std::size_t last_inner = q;
    bool exact = true;
    if (opts.budget) {
        const std::uint64_t remaining = *opts.budget > head.classes ? *opts.budget - head.classes : 0;
        const std::uint64_t per_outer = q * q;
        const std::uint64_t full = remaining / per_outer;
        if (full < outer_count) {
            exact = false;
            const std::uint64_t rows_left = (remaining % per_outer) / q;
            outer_count = full + (rows_left ? 1 : 0);
            last_inner = rows_left ? static_cast<std::size_t>(rows_left) : q;
        }
    }

    const unsigned threads = std::max(1u, opts.threads);
    const std::uint64_t chunk_count = std::min<std::uint64_t>(outer_count, std::uint64_t{threads} * 64);
    std::vector<ChunkBest> chunks(chunk_count);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunk_count;) {
            const std::uint64_t lo = outer_count * c / chunk_count, hi = outer_count * (c + 1) / chunk_count;
            for (std::uint64_t g = lo; g < hi; ++g)
                search.run_outer(g, chunks[c], (g + 1 == outer_count) ? last_inner : q);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ChunkBest best = head;
    for (const auto& c : chunks) {
        best.classes += c.classes;
        if (c.weight < best.weight) {
            best.weight = c.weight;
            best.keys = c.keys;
        }
    }

    DistanceResult result;
    result.d = best.weight;
    result.exact = exact;
    result.classes_enumerated = best.classes;
    for (auto key : best.keys) result.witness.push_back(f.from_canonical_key(key));
    if (naive_weight(gm, result.witness) != result.d)
        throw InvariantViolation("distance witness does not reproduce the reported weight");
    return result;
}

}  // namespace fiblrc::lrc
