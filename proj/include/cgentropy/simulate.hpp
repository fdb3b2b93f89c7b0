// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file simulate.hpp
 * @brief Direct simulation of the noisy map and the induced chain.
 *
 * One step from cell n resamples a uniform point of the cell, applies f, and
 * projects the image back to a cell. Only the per-cell marginal of the noise
 * matters; simulate_chain_coupled realizes two different joint couplings of
 * the noise vector for checking exactly that.
 */

#include "cgentropy/map.hpp"
#include "cgentropy/partition.hpp"
#include "cgentropy/rng.hpp"
#include "cgentropy/transition.hpp"

#include <cstdint>
#include <vector>

namespace cgentropy {

struct Trajectory {
    std::int64_t n = 0;         // number of cells
    std::uint64_t seed = 0;
    std::vector<std::int64_t> states;  // X_0 .. X_T

    std::int64_t steps() const { return static_cast<std::int64_t>(states.size()) - 1; }
};

enum class NoiseCoupling {
    SharedShift,       // one uniform per step, shifted into the current cell
    IndependentCells,  // a fresh uniform per cell per step; the current one is used
};

/// Uniform point of cell n; never returns the right endpoint.
double sample_noise_point(const EquivolumePartition& part, std::int64_t n, SplitMix64& rng);

std::int64_t step_state(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                        std::int64_t n, SplitMix64& rng);

double step_point(const PiecewiseLinearMap& f, const EquivolumePartition& part, double x,
                  SplitMix64& rng);

/// X_0 uniform on {1..N}, then `steps` transitions from the seeded stream.
Trajectory simulate_chain(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                          std::int64_t steps, std::uint64_t seed);

Trajectory simulate_chain_coupled(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                  std::int64_t steps, std::uint64_t seed, NoiseCoupling coupling);

struct EmpiricalMatrix {
    FloatMatrix matrix;  // normalized counts; unobserved rows are empty
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> counts;  // raw, per row
    std::vector<std::int64_t> row_totals;
    std::vector<std::int64_t> unobserved;  // states with no outgoing observation
};

EmpiricalMatrix empirical_transition_matrix(const Trajectory& traj);

struct EmpiricalEntropy {
    bool defined = false;  // false when the trajectory has no transitions
    double value = 0.0;
    std::int64_t observed_rows = 0;
    std::int64_t transitions = 0;
};

/// Plug-in estimate (1/N) sum over observed rows of the empirical row entropy.
EmpiricalEntropy empirical_entropy(const Trajectory& traj);

}  // namespace cgentropy
