// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file conjugacy.hpp
 * @brief Topological conjugation g = C o f o C^{-1} and entropy invariance.
 *
 * For a homeomorphism C of [0,1], the conjugate system (g, mu o C^{-1})
 * coarse-grained by the pushed-forward partition C(cells) has the same
 * transition matrix as (f, Lebesgue) on the original cells, so the exact
 * computational path for a conjugate system is the base matrix itself.
 * Monte Carlo simulation of g provides the independent cross-check.
 *
 * Built in: the symmetric tent conjugated by C(x) = sin^2(pi x / 2), whose
 * conjugate is the logistic map 4y(1-y).
 */

#include "cgentropy/map.hpp"
#include "cgentropy/partition.hpp"
#include "cgentropy/transition.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cgentropy {

struct Homeomorphism {
    std::function<double(double)> forward;   // strictly increasing, 0 -> 0, 1 -> 1
    std::function<double(double)> inverse;
    std::string label;

    static Homeomorphism identity();
    static Homeomorphism sine_squared();  // C(x) = sin^2(pi x / 2)
    /// Lookup by CLI label: "identity" or "sine-squared".
    static Homeomorphism by_label(const std::string& label);
};

struct HomeomorphismCheck {
    bool ok = false;
    bool monotone = false;
    bool fixes_endpoints = false;
    double max_roundtrip_error = 0.0;  // |C(C^{-1}(y)) - y| over the grid
};

HomeomorphismCheck validate_homeomorphism(const Homeomorphism& hom, int grid_points = 10000);

class ConjugateSystem {
    PiecewiseLinearMap base_;
    Homeomorphism hom_;
    std::function<double(double)> direct_;  // closed form for g, when known

  public:
    ConjugateSystem(PiecewiseLinearMap base, Homeomorphism hom,
                    std::function<double(double)> direct = nullptr);

    const PiecewiseLinearMap& base() const { return base_; }
    const Homeomorphism& hom() const { return hom_; }
    bool has_direct() const { return static_cast<bool>(direct_); }

    /// g(y) through the definition C(f(C^{-1}(y))).
    double conjugate_evaluate(double y) const;
    /// g(y) through its closed form when one is attached, else the definition.
    double direct_evaluate(double y) const;

    /// Symmetric tent with C = sine-squared; g is the logistic map 4y(1-y).
    static ConjugateSystem tent_logistic();
};

/// Image intervals [C(x_{n-1}), C(x_n)) of the uniform cells; each has
/// pushforward measure exactly 1/N.
std::vector<std::pair<double, double>> pushforward_partition(const EquivolumePartition& part,
                                                             const Homeomorphism& hom);

/// Exact transition matrix of (g, nu) on C(cells): identical to the base matrix.
ExactMatrix transition_matrix_conjugate(const ConjugateSystem& sys,
                                        const EquivolumePartition& part);

/// Empirical matrix from direct simulation of g on the pushed-forward cells.
FloatMatrix monte_carlo_conjugate_matrix(const ConjugateSystem& sys,
                                         const EquivolumePartition& part, std::int64_t steps,
                                         std::uint64_t seed);

}  // namespace cgentropy
