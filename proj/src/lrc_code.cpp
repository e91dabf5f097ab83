#include "fiblrc/lrc_code.hpp"

#include <algorithm>

namespace fiblrc::lrc {

MonomialBasis basis(unsigned r) {
    if (r < 3 || r % 2 == 0) throw BadLocality("locality r must be odd and at least 3, got " + std::to_string(r));
    MonomialBasis b;
    b.r = r;
    for (unsigned i = 1; i <= r - 2; ++i)
        for (unsigned j = 0; j <= r - 1; ++j) b.monomials.push_back({i, j});
    for (unsigned h = 0; h <= r - 2; ++h) b.monomials.push_back({r - 1, h});
    return b;
}

GeneratorMatrix::GeneratorMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Raw> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw LengthMismatch("generator matrix entry count");
}

std::size_t matrix_rank(const gf::Field& f, std::size_t rows, std::size_t cols, std::vector<Raw> a) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * cols + col] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t c = 0; c < cols; ++c) std::swap(a[pivot * cols + c], a[rank * cols + c]);
        const Raw inv = f.inv(a[rank * cols + col]);
        for (std::size_t row = rank + 1; row < rows; ++row) {
            const Raw factor = f.mul(a[row * cols + col], inv);
            if (!factor) continue;
            for (std::size_t c = col; c < cols; ++c)
                a[row * cols + c] = f.sub(a[row * cols + c], f.mul(factor, a[rank * cols + c]));
        }
        ++rank;
    }
    return rank;
}

GeneratorMatrix generator_matrix(const EvaluationSet& es) {
    const auto& f = *es.params().field;
    const MonomialBasis b = basis(es.r());
    const std::size_t n = es.size();
    std::vector<Raw> entries(b.size() * n);
    for (std::size_t row = 0; row < b.size(); ++row) {
        const auto& mono = b.monomials[row];
        for (std::size_t col = 0; col < n; ++col) {
            const auto& pt = es.point(col);
            entries[row * n + col] = f.mul(f.pow(pt.x, mono.x_deg), f.pow(pt.t, mono.t_deg));
        }
    }
    if (matrix_rank(f, b.size(), n, entries) != b.size())
        throw RankDeficient("generator matrix does not have full rank");
    return GeneratorMatrix(es.params().field, b.size(), n, std::move(entries));
}

std::vector<Raw> encode(const GeneratorMatrix& gm, const std::vector<Raw>& message) {
    if (message.size() != gm.rows())
        throw LengthMismatch("message length " + std::to_string(message.size()) + " != k = " + std::to_string(gm.rows()));
    const auto& f = *gm.field();
    std::vector<Raw> word(gm.cols(), 0);
    for (std::size_t row = 0; row < gm.rows(); ++row) {
        if (!message[row]) continue;
        for (std::size_t col = 0; col < gm.cols(); ++col) word[col] = f.add(word[col], f.mul(message[row], gm.at(row, col)));
    }
    return word;
}

std::size_t hamming_weight(const std::vector<Raw>& word) {
    return static_cast<std::size_t>(std::count_if(word.begin(), word.end(), [](Raw v) { return v != 0; }));
}

std::size_t naive_weight(const GeneratorMatrix& gm, const std::vector<Raw>& message) {
    return hamming_weight(encode(gm, message));
}

std::size_t fiber_weight(const EvaluationSet& es, const std::vector<Raw>& message) {
    const auto& f = *es.params().field;
    const unsigned r = es.r();
    const MonomialBasis b = basis(r);
    if (message.size() != b.size()) throw LengthMismatch("message length does not match basis");
    std::size_t zeros = 0;
    std::vector<Raw> a(r, 0);  // a[s] for s = 1..r-1
    for (std::size_t l = 0; l < es.b(); ++l) {
        for (std::size_t j = 0; j < es.side(); ++j) {
            const Raw t = es.t_value(l, j);
            std::fill(a.begin(), a.end(), 0);
            for (std::size_t idx = 0; idx < b.size(); ++idx) {
                if (!message[idx]) continue;
                const auto& mono = b.monomials[idx];
                a[mono.x_deg] = f.add(a[mono.x_deg], f.mul(message[idx], f.pow(t, mono.t_deg)));
            }
            if (std::all_of(a.begin(), a.end(), [](Raw v) { return v == 0; })) {
                zeros += es.side();
                continue;
            }
            for (Raw x : es.roots(l)) {
                Raw acc = 0;
                for (unsigned s = r - 1; s >= 1; --s) acc = f.mul(f.add(acc, a[s]), x);
                if (acc == 0) ++zeros;
            }
        }
    }
    return es.size() - zeros;
}

long singleton_availability_upper(long n, long k, long r) {
    return n - (k - 1 + (k - 1) / r + (k - 1) / (r * r));
}

long singleton_availability_upper_simplified(long b, long r) { return b * (r + 1) * (r + 1) - (r * r - 4); }

long distance_lower_bound(long n, long r) { return n - (2 * r * r - 2 * r - 3); }

long distance_b1(unsigned r) {
    if (r < 3 || r % 2 == 0) throw BadLocality("locality r must be odd and at least 3");
    const long rr = r;
    return (rr + 1) * (rr + 1) - (rr * rr + 2 * rr - 7);
}

std::vector<Raw> f_min_message(const EvaluationSet& es) {
    if (es.b() != 1) throw NotSingleOrbit("f_min is defined for a single orbit");
    const auto& f = *es.params().field;
    const unsigned r = es.r();
    // coef[i][j] of x^i t^j
    std::vector<std::vector<Raw>> coef(r + 1, std::vector<Raw>(r + 1, 0));
    coef[1][0] = 1;
    auto times_t_minus = [&](Raw c) {
        for (auto& row : coef) {
            for (std::size_t j = row.size(); j-- > 0;) {
                const Raw shifted = j ? row[j - 1] : 0;
                row[j] = f.sub(shifted, f.mul(c, row[j]));
            }
        }
    };
    auto times_x_minus = [&](Raw c) {
        for (std::size_t i = coef.size(); i-- > 0;)
            for (std::size_t j = 0; j < coef[i].size(); ++j) {
                const Raw shifted = i ? coef[i - 1][j] : 0;
                coef[i][j] = f.sub(shifted, f.mul(c, coef[i][j]));
            }
    };
    for (unsigned j = 1; j <= r - 1; ++j) times_t_minus(es.t_value(0, j));
    for (unsigned i = 0; i + 3 < r; ++i) times_x_minus(es.roots(0)[i]);

    const MonomialBasis b = basis(r);
    std::vector<Raw> message(b.size(), 0);
    for (unsigned i = 0; i <= r; ++i)
        for (unsigned j = 0; j <= r; ++j) {
            if (!coef[i][j]) continue;
            auto it = std::find(b.monomials.begin(), b.monomials.end(), Monomial{i, j});
            if (it == b.monomials.end()) throw InvariantViolation("f_min has a monomial outside the basis");
            message[static_cast<std::size_t>(it - b.monomials.begin())] = coef[i][j];
        }
    return message;
}

CodeProfile make_profile(const EvaluationSet& es, const std::optional<DistanceResult>& dist) {
    CodeProfile p;
    const auto& sp = es.params();
    p.field = sp.field->describe();
    p.r = sp.r;
    p.q = sp.q;
    p.m = sp.m;
    p.n = es.size();
    p.k = basis(sp.r).size();
    p.b = es.b();
    p.orbits = es.orbit_indices();
    p.d_upper = singleton_availability_upper(static_cast<long>(p.n), static_cast<long>(p.k), sp.r);
    p.d_lower = p.b == 1 ? distance_b1(sp.r) : distance_lower_bound(static_cast<long>(p.n), sp.r);
    if (dist) {
        p.d_exact = dist->d;
        p.d_is_exact = dist->exact;
        p.witness = dist->witness;
    }
    return p;
}

void validate_profile(const CodeProfile& p) {
    if (p.r < 3 || p.r % 2 == 0) throw SchemaMismatch("profile r must be odd and at least 3");
    const std::size_t side = p.r + 1;
    if (p.k != p.r * (p.r - 1) - 1) throw SchemaMismatch("profile k does not equal r(r-1)-1");
    if (p.b != p.orbits.size() || p.b == 0) throw SchemaMismatch("profile b does not match its orbit list");
    if (p.n != p.b * side * side) throw SchemaMismatch("profile n does not equal b(r+1)^2");
    if (p.availability != 2) throw SchemaMismatch("profile availability must be 2");
    if (p.d_exact && p.d_is_exact &&
        (static_cast<long>(*p.d_exact) < p.d_lower || static_cast<long>(*p.d_exact) > p.d_upper))
        throw SchemaMismatch("profile distance violates its bounds");
    if (!p.witness.empty() && p.witness.size() != p.k) throw SchemaMismatch("witness length does not equal k");
}

}  // namespace fiblrc::lrc
