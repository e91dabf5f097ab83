#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fiblrc/gf.hpp"
#include "fiblrc/poly.hpp"

namespace fiblrc::construction {

using gf::FieldPtr;
using gf::Raw;

struct SurfaceParams {
    unsigned r = 0;
    FieldPtr field;
    Raw zeta = 0;
    std::uint64_t q = 0;
    unsigned m = 0;

    // Picks q as the smallest p^a with a | m_total and p^a = 1 mod r+1
    // unless q is given explicitly.
    static SurfaceParams make(FieldPtr field, unsigned r, std::optional<std::uint64_t> q = std::nullopt);
};

struct NiceOrbit {
    Raw representative = 0;    // least member in canonical order
    std::vector<Raw> members;  // canonical order
};

struct SurfacePoint {
    Raw x = 0, y = 0, t = 0;
};

struct PointIndex {
    std::size_t l = 0, i = 0, j = 0;
    bool operator==(const PointIndex&) const = default;
};

// The curve polynomial in T at t = tbar:
// T^{r+1} + 2T^{(r+1)/2} - T^3 + T^2(u+1) - T u + 1 with u = tbar^{r+1}.
poly::UniPoly specialize_P(const SurfaceParams& params, Raw t);

// Coefficients of T^0..T^{r+1} as polynomials in t.
std::vector<poly::UniPoly> generic_P_coefficients(const SurfaceParams& params);

bool is_nice_element(const SurfaceParams& params, Raw t);
std::vector<NiceOrbit> find_nice_orbits(const SurfaceParams& params);

class EvaluationSet {
public:
    const SurfaceParams& params() const { return params_; }
    unsigned r() const { return params_.r; }
    std::size_t b() const { return orbits_.size(); }
    std::size_t size() const { return points_.size(); }
    std::size_t side() const { return params_.r + 1; }

    const std::vector<NiceOrbit>& orbits() const { return orbits_; }
    const std::vector<std::size_t>& orbit_indices() const { return orbit_indices_; }
    // Roots x_0..x_r of the curve polynomial for orbit l, canonical order.
    const std::vector<Raw>& roots(std::size_t l) const { return roots_.at(l); }
    // t_j = zeta^j * representative.
    Raw t_value(std::size_t l, std::size_t j) const { return t_values_.at(l).at(j); }

    const SurfacePoint& point(std::size_t idx) const { return points_.at(idx); }
    const std::vector<SurfacePoint>& points() const { return points_; }

    // Flat index l(r+1)^2 + i(r+1) + j.
    std::size_t index(const PointIndex& p) const;
    PointIndex coords(std::size_t idx) const;

private:
    friend EvaluationSet build_evaluation_set(const SurfaceParams&, const std::vector<NiceOrbit>&,
                                              const std::vector<std::size_t>&);
    SurfaceParams params_;
    std::vector<NiceOrbit> orbits_;
    std::vector<std::size_t> orbit_indices_;
    std::vector<std::vector<Raw>> roots_;
    std::vector<std::vector<Raw>> t_values_;
    std::vector<SurfacePoint> points_;
};

EvaluationSet build_evaluation_set(const SurfaceParams& params, const std::vector<NiceOrbit>& all_orbits,
                                   const std::vector<std::size_t>& orbit_indices);
EvaluationSet build_evaluation_set(const SurfaceParams& params, const std::vector<std::size_t>& orbit_indices);

struct RecoverySets {
    std::vector<PointIndex> horizontal;  // same l, i; other j
    std::vector<PointIndex> vertical;    // same l, j; other i
};

RecoverySets recovery_indices(const EvaluationSet& es, std::size_t l, std::size_t i, std::size_t j);

// Least m with q^m >= 2(r+1)! m.
unsigned m_sufficient(std::uint64_t q, unsigned r);
// Least a >= 1 with (r+2)^a >= 2(r+1)! a.
unsigned m_upper_estimate(unsigned r);

}  // namespace fiblrc::construction
