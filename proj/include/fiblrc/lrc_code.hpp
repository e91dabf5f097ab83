#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiblrc/construction.hpp"

namespace fiblrc::lrc {

using construction::EvaluationSet;
using gf::FieldPtr;
using gf::Raw;

struct Monomial {
    unsigned x_deg = 0, t_deg = 0;
    bool operator==(const Monomial&) const = default;
};

struct MonomialBasis {
    unsigned r = 0;
    std::vector<Monomial> monomials;  // sorted by (x_deg, t_deg)
    std::size_t size() const { return monomials.size(); }
};

MonomialBasis basis(unsigned r);

class GeneratorMatrix {
public:
    GeneratorMatrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Raw> entries);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Raw at(std::size_t row, std::size_t col) const { return entries_[row * cols_ + col]; }
    const std::vector<Raw>& entries() const { return entries_; }

private:
    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<Raw> entries_;  // row-major
};

// Rank over the field by Gaussian elimination.
std::size_t matrix_rank(const gf::Field& f, std::size_t rows, std::size_t cols, std::vector<Raw> data);

GeneratorMatrix generator_matrix(const EvaluationSet& es);

std::vector<Raw> encode(const GeneratorMatrix& gm, const std::vector<Raw>& message);
std::size_t hamming_weight(const std::vector<Raw>& word);

// Weight by direct evaluation at all n points.
std::size_t naive_weight(const GeneratorMatrix& gm, const std::vector<Raw>& message);
// Weight counted fiber by fiber: on the vertical fiber t = tbar the message
// is a polynomial in x whose zeros among the fiber's roots are counted.
std::size_t fiber_weight(const EvaluationSet& es, const std::vector<Raw>& message);

struct DistanceOptions {
    std::optional<std::uint64_t> budget;  // cap on enumerated projective classes
    unsigned threads = 1;
};

struct DistanceResult {
    std::size_t d = 0;
    std::vector<Raw> witness;
    bool exact = true;
    std::uint64_t classes_enumerated = 0;
};

DistanceResult min_distance(const EvaluationSet& es, const GeneratorMatrix& gm, const DistanceOptions& opts = {});

long singleton_availability_upper(long n, long k, long r);
long singleton_availability_upper_simplified(long b, long r);
long distance_lower_bound(long n, long r);
long distance_b1(unsigned r);

// Coefficients of x * prod_{j=1}^{r-1}(t - zeta^j tbar) * prod_{i=0}^{r-4}(x - xbar_i)
// in the monomial basis.
std::vector<Raw> f_min_message(const EvaluationSet& es);

struct CodeProfile {
    std::string field;  // Field::describe()
    unsigned r = 0;
    std::uint64_t q = 0;
    unsigned m = 0;
    std::size_t n = 0, k = 0, b = 0;
    unsigned availability = 2;
    std::vector<std::size_t> orbits;
    std::optional<std::size_t> d_exact;
    bool d_is_exact = true;
    long d_lower = 0;
    long d_upper = 0;
    std::vector<Raw> witness;
};

CodeProfile make_profile(const EvaluationSet& es, const std::optional<DistanceResult>& dist = std::nullopt);
// Checks the structural invariants; throws SchemaMismatch.
void validate_profile(const CodeProfile& p);

}  // namespace fiblrc::lrc
