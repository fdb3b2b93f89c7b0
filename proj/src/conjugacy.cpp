// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/conjugacy.hpp"

#include "cgentropy/entropy.hpp"
#include "cgentropy/rng.hpp"
#include "cgentropy/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cgentropy {

Homeomorphism Homeomorphism::identity() {
    return Homeomorphism{[](double x) { return x; }, [](double y) { return y; }, "identity"};
}

Homeomorphism Homeomorphism::sine_squared() {
    return Homeomorphism{
        [](double x) {
            double s = std::sin(M_PI * x / 2.0);
            return std::clamp(s * s, 0.0, 1.0);
        },
        [](double y) { return std::clamp(2.0 / M_PI * std::asin(std::sqrt(y)), 0.0, 1.0); },
        "sine-squared"};
}

Homeomorphism Homeomorphism::by_label(const std::string& label) {
    if (label == "identity") return identity();
    if (label == "sine-squared") return sine_squared();
    throw std::invalid_argument("unknown conjugacy label '" + label + "'");
}

HomeomorphismCheck validate_homeomorphism(const Homeomorphism& hom, int grid_points) {
    HomeomorphismCheck check;
    check.fixes_endpoints = hom.forward(0.0) == 0.0 && hom.forward(1.0) == 1.0;
    check.monotone = true;
    double prev = hom.forward(0.0);
    for (int k = 1; k <= grid_points; ++k) {
        double x = static_cast<double>(k) / grid_points;
        double y = hom.forward(x);
        if (!(y > prev)) check.monotone = false;
        prev = y;
        double back = hom.forward(hom.inverse(y));
        check.max_roundtrip_error = std::max(check.max_roundtrip_error, std::abs(back - y));
    }
    check.ok = check.monotone && check.fixes_endpoints && check.max_roundtrip_error <= 1e-12;
    return check;
}

ConjugateSystem::ConjugateSystem(PiecewiseLinearMap base, Homeomorphism hom,
                                 std::function<double(double)> direct)
    : base_(std::move(base)), hom_(std::move(hom)), direct_(std::move(direct)) {}

double ConjugateSystem::conjugate_evaluate(double y) const {
    if (y < 0.0 || y > 1.0) throw std::domain_error("conjugate_evaluate: point outside [0,1]");
    return hom_.forward(base_.evaluate(hom_.inverse(y)));
}

double ConjugateSystem::direct_evaluate(double y) const {
    if (direct_) {
        if (y < 0.0 || y > 1.0) throw std::domain_error("direct_evaluate: point outside [0,1]");
        return std::clamp(direct_(y), 0.0, 1.0);
    }
    return conjugate_evaluate(y);
}

ConjugateSystem ConjugateSystem::tent_logistic() {
    return ConjugateSystem(tent_map(), Homeomorphism::sine_squared(),
                           [](double y) { return 4.0 * y * (1.0 - y); });
}

std::vector<std::pair<double, double>> pushforward_partition(const EquivolumePartition& part,
                                                             const Homeomorphism& hom) {
    std::vector<std::pair<double, double>> cells;
    cells.reserve(static_cast<std::size_t>(part.size()));
    double prev = hom.forward(0.0);
    for (std::int64_t n = 1; n <= part.size(); ++n) {
        double next = hom.forward(part.endpoint(n).to_double());
        cells.emplace_back(prev, next);
        prev = next;
    }
    return cells;
}

ExactMatrix transition_matrix_conjugate(const ConjugateSystem& sys,
                                        const EquivolumePartition& part) {
    // p(n'|n) for (g, nu) on C(cells) equals the base matrix entry for entry.
    return build_transition_matrix(sys.base(), part);
}

FloatMatrix monte_carlo_conjugate_matrix(const ConjugateSystem& sys,
                                         const EquivolumePartition& part, std::int64_t steps,
                                         std::uint64_t seed) {
    if (steps < 1) throw std::invalid_argument("monte_carlo_conjugate_matrix: steps must be >= 1");
    const std::int64_t N = part.size();
    std::vector<double> bounds;  // C(n/N), n = 0..N
    bounds.reserve(static_cast<std::size_t>(N) + 1);
    for (std::int64_t n = 0; n <= N; ++n)
        bounds.push_back(sys.hom().forward(part.endpoint(n).to_double()));

    auto project = [&](double y) -> std::int64_t {
        auto it = std::upper_bound(bounds.begin(), bounds.end(), y);
        auto idx = static_cast<std::int64_t>(it - bounds.begin());
        return std::clamp<std::int64_t>(idx, 1, N);
    };

    SplitMix64 rng(seed);
    std::vector<std::map<std::int64_t, std::int64_t>> counts(static_cast<std::size_t>(N));
    std::vector<std::int64_t> totals(static_cast<std::size_t>(N), 0);
    std::int64_t state = 1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(N)));
    for (std::int64_t t = 0; t < steps; ++t) {
        // nu-sample of C(cell): push a uniform cell point through C.
        double x = sample_noise_point(part, state, rng);
        double y = sys.hom().forward(x);
        std::int64_t next = project(sys.direct_evaluate(y));
        ++counts[static_cast<std::size_t>(state - 1)][next];
        ++totals[static_cast<std::size_t>(state - 1)];
        state = next;
    }

    std::vector<FloatMatrix::Row> rows(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
        auto idx = static_cast<std::size_t>(n - 1);
        for (const auto& [to, c] : counts[idx])
            rows[idx].emplace_back(to, static_cast<double>(c) / static_cast<double>(totals[idx]));
    }
    return FloatMatrix(N, std::move(rows), {});
}

}  // namespace cgentropy
