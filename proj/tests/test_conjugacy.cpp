// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/conjugacy.hpp"

#include "cgentropy/entropy.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cgentropy;
using namespace cgtest;

TEST_CASE("built-in homeomorphisms validate") {
    HomeomorphismCheck id = validate_homeomorphism(Homeomorphism::identity());
    CHECK(id.ok);
    HomeomorphismCheck sine = validate_homeomorphism(Homeomorphism::sine_squared());
    CHECK(sine.ok);
    CHECK(sine.monotone);
    CHECK(sine.fixes_endpoints);
    CHECK(sine.max_roundtrip_error <= 1e-12);
    CHECK_THROWS_AS(Homeomorphism::by_label("unknown"), std::invalid_argument);
}

TEST_CASE("identity conjugation reproduces the base map") {
    ConjugateSystem sys(tent_map(), Homeomorphism::identity());
    PiecewiseLinearMap f = tent_map();
    for (int k = 0; k <= 100; ++k) {
        double y = k / 100.0;
        CHECK(sys.conjugate_evaluate(y) == doctest::Approx(f.evaluate(y)).epsilon(1e-15));
    }
    CHECK(sys.conjugate_evaluate(0.0) == 0.0);
}

TEST_CASE("tent conjugated by sine-squared is the logistic map") {
    ConjugateSystem sys = ConjugateSystem::tent_logistic();
    CHECK(sys.has_direct());
    for (double y : {0.1, 0.25, 0.7})
        CHECK(std::abs(sys.conjugate_evaluate(y) - 4.0 * y * (1.0 - y)) <= 1e-10);
    for (int k = 0; k <= 1000; ++k) {
        double y = k / 1000.0;
        CHECK(std::abs(sys.conjugate_evaluate(y) - sys.direct_evaluate(y)) <= 1e-10);
    }
    // g(C(x)) = C(f(x)) pointwise
    const Homeomorphism& c = sys.hom();
    for (int k = 0; k <= 1000; ++k) {
        double x = k / 1000.0;
        CHECK(std::abs(sys.direct_evaluate(c.forward(x)) - c.forward(sys.base().evaluate(x))) <=
              1e-10);
    }
    CHECK_THROWS_AS(sys.conjugate_evaluate(-0.1), std::domain_error);
}

TEST_CASE("pushforward partitions") {
    EquivolumePartition four = EquivolumePartition::uniform(4);
    auto id_cells = pushforward_partition(four, Homeomorphism::identity());
    REQUIRE(id_cells.size() == 4);
    for (std::int64_t n = 1; n <= 4; ++n) {
        CHECK(id_cells[n - 1].first == doctest::Approx((n - 1) / 4.0));
        CHECK(id_cells[n - 1].second == doctest::Approx(n / 4.0));
    }

    EquivolumePartition two = EquivolumePartition::uniform(2);
    auto sine_cells = pushforward_partition(two, Homeomorphism::sine_squared());
    CHECK(sine_cells[0].second == doctest::Approx(0.5).epsilon(1e-15));  // C(1/2) = 1/2

    Homeomorphism square{[](double x) { return x * x; },
                         [](double y) { return std::sqrt(y); },
                         "square"};
    auto square_cells = pushforward_partition(two, square);
    CHECK(square_cells[0].second == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("exact conjugate path is the base matrix, bit for bit") {
    ConjugateSystem sys = ConjugateSystem::tent_logistic();
    for (std::int64_t n : {3, 8}) {
        EquivolumePartition part = EquivolumePartition::uniform(n);
        ExactMatrix base = build_transition_matrix(sys.base(), part);
        ExactMatrix conj = transition_matrix_conjugate(sys, part);
        CHECK(base == conj);
        CHECK(shannon_entropy(base) == shannon_entropy(conj));
    }
}

TEST_CASE("monte carlo conjugate matrix: identity reduces to the base chain") {
    ConjugateSystem sys(tent_map(), Homeomorphism::identity());
    EquivolumePartition two = EquivolumePartition::uniform(2);
    const std::int64_t steps = 100000;
    FloatMatrix mc = monte_carlo_conjugate_matrix(sys, two, steps, 4242);
    double envelope = 3.0 / std::sqrt(static_cast<double>(steps));
    for (std::int64_t n = 1; n <= 2; ++n)
        for (const auto& [col, p] : mc.row(n)) CHECK(std::abs(p - 0.5) <= envelope);
}

TEST_CASE("monte carlo conjugate matrix: logistic dynamics track the tent matrix") {
    ConjugateSystem sys = ConjugateSystem::tent_logistic();
    EquivolumePartition part = EquivolumePartition::uniform(8);
    ExactMatrix exact = build_transition_matrix(sys.base(), part);
    FloatMatrix mc = monte_carlo_conjugate_matrix(sys, part, 200000, 97);
    double worst = 0.0;
    for (std::int64_t n = 1; n <= 8; ++n) {
        std::map<std::int64_t, double> reference;
        for (const auto& [col, p] : exact.row(n)) reference[col] = p.to_double();
        for (const auto& [col, p] : mc.row(n)) {
            worst = std::max(worst, std::abs(p - reference[col]));
            reference.erase(col);
        }
        for (const auto& [col, p] : reference) worst = std::max(worst, p);
    }
    CHECK(worst <= 1.5e-2);  // ~3 sigma at 25k visits per row
}

TEST_CASE("monte carlo with one step gives a single count") {
    ConjugateSystem sys = ConjugateSystem::tent_logistic();
    EquivolumePartition part = EquivolumePartition::uniform(4);
    FloatMatrix mc = monte_carlo_conjugate_matrix(sys, part, 1, 3);
    int nonempty = 0, entries = 0;
    for (std::int64_t n = 1; n <= 4; ++n) {
        if (!mc.row(n).empty()) ++nonempty;
        for (const auto& [col, p] : mc.row(n)) {
            CHECK(p == 1.0);
            ++entries;
        }
    }
    CHECK(nonempty == 1);
    CHECK(entries == 1);
    CHECK_THROWS_AS(monte_carlo_conjugate_matrix(sys, part, 0, 3), std::invalid_argument);
}
