// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file sweep.hpp
 * @brief Convergence sweeps H_N -> lambda(f) + D(f) over schedules of N.
 *
 * One entropy report per N, rows ordered by N ascending regardless of
 * execution order, with a footer carrying the running sup/inf of the gap over
 * the largest half of the schedule. Exact mode streams rows and never holds a
 * full matrix; N values run in parallel under a thread budget.
 */

#include "cgentropy/entropy.hpp"
#include "cgentropy/map.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cgentropy {

enum class SweepMode { Auto, Exact, Float };

struct SimBlock {
    std::int64_t steps = 0;
    std::uint64_t seed = 0;
};

struct SweepConfig {
    std::vector<std::int64_t> n_values;  // deduplicated, ascending
    SweepMode mode = SweepMode::Auto;
    bool bits = false;          // emit entropy columns in bits instead of nats
    bool check_columns = false; // verify uniform stationarity per N (exact mode)
    int threads = 1;
    std::optional<SimBlock> simulate;
};

struct SweepRow {
    std::int64_t n = 0;
    bool ok = false;
    std::string error;
    EntropyReport report;
    double build_ms = 0.0;
};

struct SweepResult {
    int exit_code = 0;  // 0 ok, 2 validation failure, 3 partial per-N failures
    std::string failure_message;
    bool exact_mode = false;
    std::vector<SweepRow> rows;
    // Empirical proxies for limsup/liminf: gap extrema over the largest half
    // of the schedule.
    double gap_sup = 0.0;
    double gap_inf = 0.0;
    std::int64_t half_start_n = 0;
};

SweepResult run_sweep(const PiecewiseLinearMap& f, const SweepConfig& cfg);

void write_sweep_csv(const SweepResult& result, const SweepConfig& cfg, std::ostream& out);

struct SimCheckRow {
    std::int64_t n = 0;
    bool ok = false;
    std::string error;
    double max_entry_distance = 0.0;
    double h_exact = 0.0;
    double h_empirical = 0.0;
};

struct SimCheckResult {
    std::int64_t steps = 0;
    std::uint64_t seed = 0;
    std::vector<SimCheckRow> rows;
};

/// Exact-vs-empirical comparison per N (requires cfg.simulate).
SimCheckResult run_simulation_check(const PiecewiseLinearMap& f, const SweepConfig& cfg);

void write_simcheck_csv(const SimCheckResult& result, std::ostream& out);

/// "2x:4..65536" -> 4, 8, ..., 65536 (geometric schedule, at most 31 terms).
std::vector<std::int64_t> parse_n_schedule(const std::string& spec);
/// "3,10,100" -> {3, 10, 100}.
std::vector<std::int64_t> parse_n_list(const std::string& csv);

}  // namespace cgentropy
