// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/sweep.hpp"

#include "cgentropy/entropy.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cgentropy;
using namespace cgtest;

namespace {

// CSV text with the timing column blanked, for determinism comparisons.
std::string strip_timing(const std::string& csv) {
    std::stringstream in(csv), out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') {
            std::size_t commas = 0, start = 0, end = line.size();
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (line[i] != ',') continue;
                ++commas;
                if (commas == 6) start = i;
                if (commas == 7) end = i;
            }
            if (commas >= 7) line = line.substr(0, start) + line.substr(end);
        }
        out << line << '\n';
    }
    return out.str();
}

std::string csv_of(const SweepResult& result, const SweepConfig& cfg) {
    std::ostringstream out;
    write_sweep_csv(result, cfg, out);
    return out.str();
}

PiecewiseLinearMap shrinking_map() {
    std::vector<Coord> bps{Coord::of(Rational(0)), Coord::of(Rational(1, 2)),
                           Coord::of(Rational(1))};
    Branch first{+1, SlopeClass::integer(2), Coord::of(Rational(0))};
    Branch second{-1, SlopeClass::from_rational(Rational(1, 2)), Coord::of(Rational(3, 4))};
    return PiecewiseLinearMap(std::move(bps), {first, second});
}

}  // namespace

TEST_CASE("schedule parsing") {
    CHECK(parse_n_schedule("2x:4..64") == std::vector<std::int64_t>{4, 8, 16, 32, 64});
    CHECK(parse_n_schedule("3x:1..10") == std::vector<std::int64_t>{1, 3, 9});
    CHECK(parse_n_list("3,10,100") == std::vector<std::int64_t>{3, 10, 100});
    CHECK_THROWS_AS(parse_n_schedule("4..64"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_schedule("1x:4..64"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_schedule("2x:64..4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_schedule("2x:1..4294967296"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_list("0,4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_n_list("a,4"), std::invalid_argument);
}

TEST_CASE("tent sweep over even N has zero gap everywhere") {
    SweepConfig cfg;
    cfg.n_values = {16, 2, 8, 4};  // deliberately unordered
    cfg.mode = SweepMode::Exact;
    SweepResult result = run_sweep(tent_map(), cfg);
    CHECK(result.exit_code == 0);
    REQUIRE(result.rows.size() == 4);
    std::vector<std::int64_t> ns;
    for (const SweepRow& row : result.rows) {
        ns.push_back(row.n);
        CHECK(row.ok);
        CHECK(row.report.h_delta == std::log(2.0));
        CHECK(row.report.gap == 0.0);
    }
    CHECK(ns == std::vector<std::int64_t>{2, 4, 8, 16});  // ascending regardless of input
    CHECK(result.gap_sup == 0.0);
    CHECK(result.gap_inf == 0.0);
    CHECK(result.half_start_n == 8);
}

TEST_CASE("tent sweep: straddling N still lands near log 2") {
    SweepConfig cfg;
    cfg.n_values = {3, 10001};
    cfg.mode = SweepMode::Exact;
    SweepResult result = run_sweep(tent_map(), cfg);
    REQUIRE(result.exit_code == 0);
    CHECK(std::abs(result.rows[0].report.gap) == doctest::Approx(0.23104906).epsilon(1e-6));
    CHECK(std::abs(result.rows[1].report.gap) < 0.01);
}

TEST_CASE("non-invariant maps abort with a witness") {
    SweepConfig cfg;
    cfg.n_values = {4};
    SweepResult result = run_sweep(shrinking_map(), cfg);
    CHECK(result.exit_code == 2);
    CHECK(result.failure_message.find("invariance fails") != std::string::npos);
    CHECK(result.rows.empty());
}

TEST_CASE("exact mode rejects float maps") {
    SweepConfig cfg;
    cfg.n_values = {4};
    cfg.mode = SweepMode::Exact;
    PiecewiseLinearMap irr = skew_tent(SlopeClass::irrational(std::sqrt(2.0), "sqrt2"));
    CHECK_THROWS_AS(run_sweep(irr, cfg), std::invalid_argument);
    cfg.mode = SweepMode::Auto;
    SweepResult result = run_sweep(irr, cfg);
    CHECK(result.exit_code == 0);
    CHECK(!result.exact_mode);
}

TEST_CASE("per-N failures are recorded and exit code is 3") {
    // The second branch's slope denominator is too large to enumerate in rho,
    // so every report fails while the sweep itself carries on.
    PiecewiseLinearMap f = skew_tent(SlopeClass::from_rational(Rational(20000019, 20000018)));
    SweepConfig cfg;
    cfg.n_values = {2, 4};
    cfg.mode = SweepMode::Exact;
    SweepResult result = run_sweep(f, cfg);
    CHECK(result.exit_code == 3);
    for (const SweepRow& row : result.rows) {
        CHECK(!row.ok);
        CHECK(!row.error.empty());
    }
    std::string csv = csv_of(result, cfg);
    CHECK(csv.find(",error") != std::string::npos);
}

TEST_CASE("sweep output is deterministic and thread-count independent") {
    SweepConfig cfg;
    cfg.n_values = {3, 5, 8, 13, 21, 34};
    cfg.mode = SweepMode::Exact;
    cfg.check_columns = true;
    PiecewiseLinearMap f = skew_tent(SlopeClass::from_rational(Rational(7, 3)));
    SweepResult a = run_sweep(f, cfg);
    SweepConfig cfg4 = cfg;
    cfg4.threads = 4;
    SweepResult b = run_sweep(f, cfg4);
    CHECK(strip_timing(csv_of(a, cfg)) == strip_timing(csv_of(b, cfg4)));
    SweepResult c = run_sweep(f, cfg);
    CHECK(strip_timing(csv_of(a, cfg)) == strip_timing(csv_of(c, cfg)));
}

TEST_CASE("csv shape, footer, and bits conversion") {
    SweepConfig cfg;
    cfg.n_values = {2, 4};
    cfg.mode = SweepMode::Exact;
    SweepResult result = run_sweep(tent_map(), cfg);
    std::string csv = csv_of(result, cfg);
    CHECK(csv.rfind("N,H_delta,lyapunov,defect,predicted_limit,gap,build_ms,mode\n", 0) == 0);
    CHECK(csv.find(",exact\n") != std::string::npos);
    CHECK(csv.find("# largest-half gap: sup=0 inf=0 (N >= 4)") != std::string::npos);

    cfg.bits = true;
    std::string bits_csv = csv_of(result, cfg);
    CHECK(bits_csv.find("2,1,1,0,1,0,") != std::string::npos);  // log2 / log2 = 1 bit
}

TEST_CASE("simulation check compares exact and empirical chains") {
    SweepConfig cfg;
    cfg.n_values = {1, 2, 3};
    cfg.mode = SweepMode::Exact;
    cfg.simulate = SimBlock{100000, 7};
    SimCheckResult sim = run_simulation_check(tent_map(), cfg);
    REQUIRE(sim.rows.size() == 3);
    CHECK(sim.rows[0].ok);
    CHECK(sim.rows[0].max_entry_distance == 0.0);  // single absorbing state
    double envelope = 3.0 / std::sqrt(100000.0);
    CHECK(sim.rows[1].max_entry_distance <= envelope);
    CHECK(std::abs(sim.rows[1].h_exact - std::log(2.0)) <= 1e-15);
    CHECK(std::abs(sim.rows[1].h_empirical - std::log(2.0)) <= 0.01);
    CHECK(sim.rows[2].max_entry_distance <= 3.0 * envelope);

    std::ostringstream out;
    write_simcheck_csv(sim, out);
    CHECK(out.str().rfind("N,max_entry_distance,H_exact,H_empirical,steps,seed\n", 0) == 0);

    SweepConfig no_sim;
    no_sim.n_values = {2};
    CHECK_THROWS_AS(run_simulation_check(tent_map(), no_sim), std::invalid_argument);
}

TEST_CASE("empty schedule is rejected") {
    SweepConfig cfg;
    CHECK_THROWS_AS(run_sweep(tent_map(), cfg), std::invalid_argument);
}
