// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/simulate.hpp"

#include "cgentropy/entropy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace cgentropy {

double sample_noise_point(const EquivolumePartition& part, std::int64_t n, SplitMix64& rng) {
    const auto N = static_cast<double>(part.size());
    if (n < 1 || n > part.size()) throw std::out_of_range("sample_noise_point: cell index");
    double u = rng.next_double();
    double x = (static_cast<double>(n - 1) + u) / N;
    double hi = static_cast<double>(n) / N;
    if (x >= hi) x = std::nextafter(hi, 0.0);  // keep the half-open cell contract
    return x;
}

std::int64_t step_state(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                        std::int64_t n, SplitMix64& rng) {
    return part.project(f.evaluate(sample_noise_point(part, n, rng)));
}

double step_point(const PiecewiseLinearMap& f, const EquivolumePartition& part, double x,
                  SplitMix64& rng) {
    return f.evaluate(sample_noise_point(part, part.project(x), rng));
}

Trajectory simulate_chain(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                          std::int64_t steps, std::uint64_t seed) {
    return simulate_chain_coupled(f, part, steps, seed, NoiseCoupling::SharedShift);
}

Trajectory simulate_chain_coupled(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                  std::int64_t steps, std::uint64_t seed,
                                  NoiseCoupling coupling) {
    if (steps < 0) throw std::invalid_argument("simulate_chain: steps must be >= 0");
    const std::int64_t N = part.size();
    SplitMix64 rng(seed);
    Trajectory traj;
    traj.n = N;
    traj.seed = seed;
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    std::int64_t state = 1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(N)));
    traj.states.push_back(state);
    for (std::int64_t t = 0; t < steps; ++t) {
        if (coupling == NoiseCoupling::SharedShift) {
            state = step_state(f, part, state, rng);
        } else {
            // Realize the whole noise vector, then read the current component.
            double x = 0.0;
            for (std::int64_t cell = 1; cell <= N; ++cell) {
                double candidate = sample_noise_point(part, cell, rng);
                if (cell == state) x = candidate;
            }
            state = part.project(f.evaluate(x));
        }
        traj.states.push_back(state);
    }
    return traj;
}

EmpiricalMatrix empirical_transition_matrix(const Trajectory& traj) {
    const std::int64_t N = traj.n;
    EmpiricalMatrix result;
    std::vector<std::map<std::int64_t, std::int64_t>> counts(static_cast<std::size_t>(N));
    std::vector<std::int64_t> totals(static_cast<std::size_t>(N), 0);
    for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
        std::int64_t from = traj.states[t], to = traj.states[t + 1];
        ++counts[static_cast<std::size_t>(from - 1)][to];
        ++totals[static_cast<std::size_t>(from - 1)];
    }

    std::vector<FloatMatrix::Row> rows(static_cast<std::size_t>(N));
    result.counts.resize(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        auto idx = static_cast<std::size_t>(n - 1);
        if (totals[idx] == 0) {
            result.unobserved.push_back(n);
            continue;
        }
        for (const auto& [to, c] : counts[idx]) {
            result.counts[idx].emplace_back(to, c);
            rows[idx].emplace_back(to,
                                   static_cast<double>(c) / static_cast<double>(totals[idx]));
        }
    }
    result.row_totals = std::move(totals);
    result.matrix = FloatMatrix(N, std::move(rows), {});
    return result;
}

EmpiricalEntropy empirical_entropy(const Trajectory& traj) {
    EmpiricalEntropy result;
    if (traj.states.size() < 2) return result;  // no transitions observed
    EmpiricalMatrix em = empirical_transition_matrix(traj);
    result.defined = true;
    double sum = 0.0;
    for (std::int64_t n = 1; n <= traj.n; ++n) {
        const auto& row = em.matrix.row(n);
        if (row.empty()) continue;
        ++result.observed_rows;
        for (const auto& [col, p] : row) sum += phi(p);
    }
    result.transitions = traj.steps();
    result.value = sum / static_cast<double>(traj.n);
    return result;
}

}  // namespace cgentropy
