// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/entropy.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cgentropy;
using namespace cgtest;

TEST_CASE("phi basics") {
    CHECK(phi(0.0) == 0.0);
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(0.5) == std::log(2.0) / 2.0);
    CHECK(phi(0.25) == doctest::Approx(0.25 * std::log(4.0)).epsilon(1e-15));
    CHECK_THROWS_AS(phi(-0.01), std::domain_error);
    CHECK_THROWS_AS(phi(1.01), std::domain_error);
}

TEST_CASE("shannon entropy of reference matrices") {
    PiecewiseLinearMap f = tent_map();
    ExactMatrix two = build_transition_matrix(f, EquivolumePartition::uniform(2));
    CHECK(shannon_entropy(two) == std::log(2.0));  // exact via distinct-value weights

    ExactMatrix three = build_transition_matrix(f, EquivolumePartition::uniform(3));
    CHECK(shannon_entropy(three) ==
          doctest::Approx(2.0 / 3.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(shannon_entropy(three) == doctest::Approx(0.462098).epsilon(1e-6));

    // uniform N x N matrix has entropy log N
    for (std::int64_t n : {2, 8, 10}) {
        std::vector<ExactMatrix::Row> rows(static_cast<std::size_t>(n));
        std::vector<FloatMatrix::Row> frows(static_cast<std::size_t>(n));
        for (auto& row : rows)
            for (std::int64_t c = 1; c <= n; ++c) row.emplace_back(c, Rational(1, n));
        for (auto& row : frows)
            for (std::int64_t c = 1; c <= n; ++c) row.emplace_back(c, 1.0 / static_cast<double>(n));
        CHECK(shannon_entropy(ExactMatrix(n, std::move(rows), {})) ==
              doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
        CHECK(shannon_entropy(FloatMatrix(n, std::move(frows), {})) ==
              doctest::Approx(std::log(static_cast<double>(n))).epsilon(1e-14));
    }
}

TEST_CASE("entropy stays within [0, log N] on random chains") {
    SplitMix64 rng(71);
    for (int k = 0; k < 20; ++k) {
        PiecewiseLinearMap f = random_invariant_map(rng);
        std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(150));
        double h = shannon_entropy(build_transition_matrix(f, EquivolumePartition::uniform(n)));
        CHECK(h >= 0.0);
        CHECK(h <= std::log(static_cast<double>(n)) + 1e-12);
    }
}

TEST_CASE("rho case dispatch") {
    CHECK(rho(SlopeClass::integer(2)) == 0.0);
    CHECK(rho(SlopeClass::integer(7)) == 0.0);
    CHECK(rho(SlopeClass::from_rational(Rational(3, 2))) == std::log(2.0) / 4.0);
    CHECK(rho(SlopeClass::from_rational(Rational(3, 2))) ==
          doctest::Approx(0.173287).epsilon(1e-6));
    CHECK(rho(SlopeClass::from_rational(Rational(7, 3))) ==
          doctest::Approx((phi(1.0 / 3) + phi(2.0 / 3)) / 3.0).epsilon(1e-15));
    CHECK(rho(SlopeClass::irrational(std::sqrt(2.0), "sqrt2")) == 0.25);
    CHECK_THROWS_AS(rho(SlopeClass::from_rational(Rational(1, 2))), std::domain_error);
}

TEST_CASE("entropy defect closed forms") {
    CHECK(entropy_defect(tent_map()) == 0.0);       // integer slopes: exactly zero
    CHECK(entropy_defect(doubling_map()) == 0.0);

    // m = (p+q)/p: D = 2p/(p+q)^2 sum phi(n/p) + 2q/(p+q)^2 sum phi(n/q)
    auto section5_defect = [](std::int64_t p, std::int64_t q) {
        double sum_p = 0.0, sum_q = 0.0;
        for (std::int64_t n = 1; n < p; ++n) sum_p += phi(double(n) / double(p));
        for (std::int64_t n = 1; n < q; ++n) sum_q += phi(double(n) / double(q));
        double pq = static_cast<double>(p + q);
        return 2.0 * p / (pq * pq) * sum_p + 2.0 * q / (pq * pq) * sum_q;
    };
    PiecewiseLinearMap skew32 = skew_tent(SlopeClass::from_rational(Rational(3, 2)));
    CHECK(entropy_defect(skew32) == doctest::Approx(section5_defect(2, 1)).epsilon(1e-14));
    CHECK(entropy_defect(skew32) == doctest::Approx(2.0 / 9.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(entropy_defect(skew32) == doctest::Approx(0.154033).epsilon(1e-6));

    PiecewiseLinearMap skew73 = skew_tent(SlopeClass::from_rational(Rational(7, 3)));
    CHECK(entropy_defect(skew73) == doctest::Approx(section5_defect(3, 4)).epsilon(1e-14));

    // irrational m: D = (m^2 - 2m + 2) / (2 m^2)
    double m = std::sqrt(2.0);
    PiecewiseLinearMap skew_irr = skew_tent(SlopeClass::irrational(m, "sqrt2"));
    CHECK(entropy_defect(skew_irr) ==
          doctest::Approx((m * m - 2 * m + 2) / (2 * m * m)).epsilon(1e-14));
    CHECK(entropy_defect(skew_irr) == doctest::Approx(1.0 - std::sqrt(2.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("defect is nonnegative, zero only for integer slopes") {
    SplitMix64 rng(73);
    for (int k = 0; k < 40; ++k) {
        PiecewiseLinearMap f = random_invariant_map(rng);
        double d = entropy_defect(f);
        CHECK(d >= 0.0);
        bool all_integer = true;
        for (const Branch& b : f.branches())
            if (b.magnitude.kind() != SlopeKind::Integer) all_integer = false;
        if (all_integer)
            CHECK(d == 0.0);
        else
            CHECK(d > 0.0);
    }
}

TEST_CASE("predicted limits of the worked examples") {
    CHECK(predicted_limit(tent_map()) == std::log(2.0));

    PiecewiseLinearMap skew32 = skew_tent(SlopeClass::from_rational(Rational(3, 2)));
    CHECK(predicted_limit(skew32) == doctest::Approx(0.79054687508591182).epsilon(1e-14));

    double m = std::sqrt(2.0);
    double l = 2.0 + std::sqrt(2.0);
    PiecewiseLinearMap skew_irr = skew_tent(SlopeClass::irrational(m, "sqrt2"));
    double lambda = std::log(m) / m + std::log(l) / l;
    double defect = (m * m - 2 * m + 2) / (2 * m * m);
    CHECK(predicted_limit(skew_irr) == doctest::Approx(lambda + defect).epsilon(1e-13));
    CHECK(predicted_limit(skew_irr) == doctest::Approx(0.8976151559727378).epsilon(1e-12));
}

TEST_CASE("skew tent construction") {
    PiecewiseLinearMap sym = skew_tent(SlopeClass::integer(2));
    CHECK(*sym.breakpoints()[1].exact == Rational(1, 2));
    CHECK(sym.branch(1).magnitude == SlopeClass::integer(2));  // l = 2

    PiecewiseLinearMap skew = skew_tent(SlopeClass::from_rational(Rational(3, 2)));
    CHECK(*skew.breakpoints()[1].exact == Rational(2, 3));
    CHECK(skew.branch(1).magnitude == SlopeClass::integer(3));  // l = 3
    CHECK(skew.branch(1).sign == -1);

    PiecewiseLinearMap irr = skew_tent(SlopeClass::irrational(std::sqrt(2.0), "sqrt2"));
    CHECK(irr.branch(1).magnitude.magnitude() ==
          doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
    CHECK(irr.breakpoints()[1].value == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(skew_tent(SlopeClass::integer(1)), std::invalid_argument);
    CHECK_THROWS_AS(skew_tent(SlopeClass::from_rational(Rational(9, 10))), std::invalid_argument);
}

TEST_CASE("closed-form cell entropy") {
    CHECK(cell_entropy_closed_form(2.0, 1.0, 1.0) == std::log(2.0));
    CHECK(cell_entropy_closed_form(1.5, 1.0, 0.5) ==
          doctest::Approx(std::log(1.5) + phi(0.5) / 1.5).epsilon(1e-15));
    CHECK(cell_entropy_closed_form(1.5, 1.0, 0.5) == doctest::Approx(0.636514).epsilon(1e-6));
    CHECK(cell_entropy_closed_form(1.0, 1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(cell_entropy_closed_form(0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("interior row entropies match the closed form") {
    SplitMix64 rng(79);
    for (int k = 0; k < 10; ++k) {
        PiecewiseLinearMap f = random_invariant_map(rng);
        for (std::int64_t n_cells : {16, 97}) {
            EquivolumePartition part = EquivolumePartition::uniform(n_cells);
            ExactMatrix matrix = build_transition_matrix(f, part);
            for (std::int64_t n = 1; n <= n_cells; ++n) {
                CellForm form = cell_closed_form_data(f, part, n);
                if (!form.interior) continue;
                CHECK(std::abs(row_entropy(matrix.row(n)) -
                               cell_entropy_closed_form(form.m, form.a, form.b)) <= 1e-12);
            }
        }
    }
}

TEST_CASE("equidistribution average: exact kinds") {
    CHECK(equidistribution_average(SlopeClass::integer(2), 12345) == 0.0);
    CHECK(equidistribution_average(SlopeClass::integer(3), 1) == 0.0);

    SlopeClass three_halves = SlopeClass::from_rational(Rational(3, 2));
    CHECK(equidistribution_average(three_halves, 1000) == rho(three_halves));
    CHECK(equidistribution_average(three_halves, 1000000) == rho(three_halves));

    SlopeClass seven_thirds = SlopeClass::from_rational(Rational(7, 3));
    CHECK(equidistribution_average(seven_thirds, 999999) == rho(seven_thirds));

    // any multiple of the reduced denominator reproduces rho exactly
    SplitMix64 rng(83);
    for (int k = 0; k < 20; ++k) {
        auto den = static_cast<std::int64_t>(2 + rng.next_below(30));
        auto num = den + 1 + static_cast<std::int64_t>(rng.next_below(100));
        SlopeClass s = SlopeClass::from_rational(Rational(num, den));
        auto p = s.denominator().convert_to<std::int64_t>();
        auto multiple = static_cast<std::int64_t>(1 + rng.next_below(5000)) * p;
        CHECK(equidistribution_average(s, multiple) == rho(s));
    }

    // non-multiple counts agree with the brute-force float loop
    for (std::int64_t count : {7, 999, 1001}) {
        double brute = 0.0;
        for (std::int64_t n = 1; n <= count; ++n) {
            double x = 7.0 / 3.0 * static_cast<double>(n);
            brute += phi(x - std::floor(x));
        }
        brute /= static_cast<double>(count);
        CHECK(equidistribution_average(seven_thirds, count) ==
              doctest::Approx(brute).epsilon(1e-9));
    }
    CHECK_THROWS_AS(equidistribution_average(three_halves, 0), std::invalid_argument);
}

TEST_CASE("equidistribution average: irrational kinds approach 1/4") {
    SlopeClass sqrt2 = SlopeClass::irrational(std::sqrt(2.0), "sqrt2");
    CHECK(std::abs(equidistribution_average(sqrt2, 1000000) - 0.25) <= 1e-3);
    SlopeClass pi_slope = SlopeClass::irrational(M_PI, "pi");
    CHECK(std::abs(equidistribution_average(pi_slope, 1000000) - 0.25) <= 1e-3);
}

TEST_CASE("entropy report") {
    PiecewiseLinearMap f = tent_map();
    EntropyReport r = EntropyReport::make(f, 4, std::log(2.0));
    CHECK(r.n == 4);
    CHECK(r.lyapunov == std::log(2.0));
    CHECK(r.defect == 0.0);
    CHECK(r.predicted_limit == r.lyapunov + r.defect);
    CHECK(r.gap == 0.0);
    CHECK(EntropyReport::csv_header() == "N,H_delta,lyapunov,defect,predicted_limit,gap");
    CHECK(r.csv_row().rfind("4,0.69314718055994529,", 0) == 0);
    CHECK_THROWS_AS(EntropyReport::make(f, 2, 5.0), std::logic_error);   // H > log N
    CHECK_THROWS_AS(EntropyReport::make(f, 2, -0.5), std::logic_error);  // H < 0
}
