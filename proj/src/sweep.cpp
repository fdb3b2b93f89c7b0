// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/sweep.hpp"

#include "cgentropy/simulate.hpp"
#include "cgentropy/thread_pool.hpp"
#include "cgentropy/transition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cgentropy {

namespace {

bool resolve_exact_mode(const PiecewiseLinearMap& f, SweepMode mode) {
    switch (mode) {
        case SweepMode::Exact:
            if (!f.is_exact())
                throw std::invalid_argument("sweep: exact mode requires all-rational map data");
            return true;
        case SweepMode::Float:
            return false;
        case SweepMode::Auto:
            return f.is_exact();
    }
    return false;
}

std::string witness_text(const InvarianceReport& report) {
    std::ostringstream msg;
    msg << "Lebesgue invariance fails";
    if (report.witness_exact)
        msg << " on [" << report.witness_exact->first.to_string() << ", "
            << report.witness_exact->second.to_string() << ")";
    else if (report.witness)
        msg << " on [" << report.witness->first << ", " << report.witness->second << ")";
    return msg.str();
}

constexpr double kLog2 = 0.69314718055994530941723212145818;

}  // namespace

SweepResult run_sweep(const PiecewiseLinearMap& f, const SweepConfig& cfg) {
    SweepResult result;
    if (cfg.n_values.empty()) throw std::invalid_argument("sweep: empty N schedule");
    result.exact_mode = resolve_exact_mode(f, cfg.mode);

    InvarianceReport inv = f.verify_lebesgue_invariance();
    if (!inv.holds) {
        result.exit_code = 2;
        result.failure_message = witness_text(inv);
        return result;
    }

    std::vector<std::int64_t> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    result.rows.resize(ns.size());
    parallel_for_index(ns.size(), cfg.threads, [&](std::size_t i) {
        SweepRow& row = result.rows[i];
        row.n = ns[i];
        auto t0 = std::chrono::steady_clock::now();
        try {
            EquivolumePartition part = EquivolumePartition::uniform(row.n);
            double h = 0.0;
            if (result.exact_mode) {
                ChainStats stats = exact_chain_stats(f, part, cfg.check_columns);
                if (!stats.rows_stochastic)
                    throw std::logic_error("row sums deviate from 1 in exact mode");
                if (cfg.check_columns && !stats.doubly_stochastic)
                    throw std::logic_error("column sums deviate from 1 in exact mode");
                h = stats.shannon_entropy;
            } else {
                FloatMatrix p = build_transition_matrix_float(f, part);
                if (cfg.check_columns && !verify_doubly_stochastic(p))
                    throw std::logic_error("column sums deviate from 1 beyond tolerance");
                h = shannon_entropy(p);
            }
            row.report = EntropyReport::make(f, row.n, h);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        row.build_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    });

    bool any_failed = false, first = true;
    std::size_t half_start = result.rows.size() / 2;
    result.half_start_n = result.rows[half_start].n;
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const SweepRow& row = result.rows[i];
        if (!row.ok) {
            any_failed = true;
            continue;
        }
        if (i >= half_start) {
            if (first) {
                result.gap_sup = result.gap_inf = row.report.gap;
                first = false;
            } else {
                result.gap_sup = std::max(result.gap_sup, row.report.gap);
                result.gap_inf = std::min(result.gap_inf, row.report.gap);
            }
        }
    }
    if (any_failed) result.exit_code = 3;
    return result;
}

void write_sweep_csv(const SweepResult& result, const SweepConfig& cfg, std::ostream& out) {
    const double unit = cfg.bits ? kLog2 : 1.0;
    out << EntropyReport::csv_header() << ",build_ms,mode\n";
    char buf[256];
    const char* mode = result.exact_mode ? "exact" : "float";
    for (const SweepRow& row : result.rows) {
        if (!row.ok) {
            std::snprintf(buf, sizeof(buf), "%lld,nan,nan,nan,nan,nan,%.3f,error",
                          static_cast<long long>(row.n), row.build_ms);
            out << buf << '\n';
            continue;
        }
        const EntropyReport& r = row.report;
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.3f,%s",
                      static_cast<long long>(r.n), r.h_delta / unit, r.lyapunov / unit,
                      r.defect / unit, r.predicted_limit / unit, r.gap / unit, row.build_ms, mode);
        out << buf << '\n';
    }
    std::snprintf(buf, sizeof(buf), "# largest-half gap: sup=%.17g inf=%.17g (N >= %lld)",
                  result.gap_sup / unit, result.gap_inf / unit,
                  static_cast<long long>(result.half_start_n));
    out << buf << '\n';
}

SimCheckResult run_simulation_check(const PiecewiseLinearMap& f, const SweepConfig& cfg) {
    if (!cfg.simulate) throw std::invalid_argument("simulation check: no simulate block");
    SimCheckResult result;
    result.steps = cfg.simulate->steps;
    result.seed = cfg.simulate->seed;
    const bool exact_mode = resolve_exact_mode(f, cfg.mode);

    std::vector<std::int64_t> ns = cfg.n_values;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    result.rows.resize(ns.size());

    parallel_for_index(ns.size(), cfg.threads, [&](std::size_t i) {
        SimCheckRow& row = result.rows[i];
        row.n = ns[i];
        try {
            EquivolumePartition part = EquivolumePartition::uniform(row.n);
            // Reference matrix as dense lookup of (row, col) -> p.
            std::map<std::pair<std::int64_t, std::int64_t>, double> exact;
            if (exact_mode) {
                ExactMatrix p = build_transition_matrix(f, part);
                row.h_exact = shannon_entropy(p);
                for (std::int64_t n = 1; n <= p.size(); ++n)
                    for (const auto& [col, value] : p.row(n)) exact[{n, col}] = value.to_double();
            } else {
                FloatMatrix p = build_transition_matrix_float(f, part);
                row.h_exact = shannon_entropy(p);
                for (std::int64_t n = 1; n <= p.size(); ++n)
                    for (const auto& [col, value] : p.row(n)) exact[{n, col}] = value;
            }

            Trajectory traj = simulate_chain(f, part, cfg.simulate->steps, cfg.simulate->seed);
            EmpiricalMatrix em = empirical_transition_matrix(traj);
            EmpiricalEntropy he = empirical_entropy(traj);
            row.h_empirical = he.defined ? he.value : 0.0;

            auto remaining = exact;
            for (std::int64_t n = 1; n <= row.n; ++n)
                for (const auto& [col, p_hat] : em.matrix.row(n)) {
                    auto it = remaining.find({n, col});
                    double p = it == remaining.end() ? 0.0 : it->second;
                    if (it != remaining.end()) remaining.erase(it);
                    row.max_entry_distance = std::max(row.max_entry_distance, std::abs(p_hat - p));
                }
            for (const auto& [key, p] : remaining)
                if (std::find(em.unobserved.begin(), em.unobserved.end(), key.first) ==
                    em.unobserved.end())
                    row.max_entry_distance = std::max(row.max_entry_distance, p);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return result;
}

void write_simcheck_csv(const SimCheckResult& result, std::ostream& out) {
    out << "N,max_entry_distance,H_exact,H_empirical,steps,seed\n";
    char buf[224];
    for (const SimCheckRow& row : result.rows) {
        if (!row.ok) {
            out << row.n << ",nan,nan,nan," << result.steps << ',' << result.seed << '\n';
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%lld,%llu",
                      static_cast<long long>(row.n), row.max_entry_distance, row.h_exact,
                      row.h_empirical, static_cast<long long>(result.steps),
                      static_cast<unsigned long long>(result.seed));
        out << buf << '\n';
    }
}

std::vector<std::int64_t> parse_n_schedule(const std::string& spec) {
    // factor "x:" start ".." end, e.g. "2x:4..65536"
    auto fail = [&] {
        throw std::invalid_argument("bad N schedule '" + spec + "' (expected like 2x:4..65536)");
    };
    auto xpos = spec.find("x:");
    auto dots = spec.find("..");
    if (xpos == std::string::npos || dots == std::string::npos || dots < xpos) fail();
    std::int64_t factor = 0, start = 0, end = 0;
    try {
        factor = std::stoll(spec.substr(0, xpos));
        start = std::stoll(spec.substr(xpos + 2, dots - xpos - 2));
        end = std::stoll(spec.substr(dots + 2));
    } catch (const std::exception&) {
        fail();
    }
    if (factor < 2 || start < 1 || end < start) fail();
    std::vector<std::int64_t> ns;
    for (std::int64_t n = start; n <= end; n *= factor) {
        ns.push_back(n);
        if (ns.size() > 31) throw std::invalid_argument("N schedule has too many terms (max 31)");
        if (n > end / factor) break;  // avoid overflow
    }
    return ns;
}

std::vector<std::int64_t> parse_n_list(const std::string& csv) {
    std::vector<std::int64_t> ns;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::int64_t n = 0;
        try {
            n = std::stoll(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad N list entry '" + item + "'");
        }
        if (n < 1) throw std::invalid_argument("N must be >= 1");
        ns.push_back(n);
    }
    if (ns.empty()) throw std::invalid_argument("empty N list");
    return ns;
}

}  // namespace cgentropy
