// SPDX-License-Identifier: Apache-2.0
//
// cgentropy: entropy of coarse-grained chaotic interval maps.
//
//   sweep     convergence study H_N over a schedule of N (CSV)
//   matrix    dump one transition matrix as sparse triplets
//   simulate  sample a trajectory of the induced chain
//   validate  check a map's Lebesgue invariance and print its limit data
//   conjugacy exact/Monte-Carlo invariance check under a conjugacy

#include "cgentropy/conjugacy.hpp"
#include "cgentropy/entropy.hpp"
#include "cgentropy/map_io.hpp"
#include "cgentropy/simulate.hpp"
#include "cgentropy/sweep.hpp"
#include "cgentropy/transition.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

namespace {

using namespace cgentropy;

constexpr int kExitValidation = 2;

std::unique_ptr<std::ostream> open_output(const std::string& path, std::ostream*& out) {
    if (path.empty() || path == "-") {
        out = &std::cout;
        return nullptr;
    }
    auto file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::runtime_error("cannot open output file '" + path + "'");
    out = file.get();
    return file;
}

SimBlock parse_sim_block(const std::string& spec) {
    // "T=1000000,seed=42"
    SimBlock block;
    bool have_t = false;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--simulate expects T=<steps>,seed=<seed>");
        std::string key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "T") {
            block.steps = std::stoll(value);
            have_t = true;
        } else if (key == "seed") {
            block.seed = std::stoull(value);
        } else {
            throw CLI::ValidationError("--simulate: unknown key '" + key + "'");
        }
    }
    if (!have_t || block.steps < 1)
        throw CLI::ValidationError("--simulate needs a positive T=<steps>");
    return block;
}

int run_sweep_cmd(const std::string& map_source, const std::string& schedule,
                  const std::string& n_list, const std::string& mode, const std::string& out_path,
                  bool bits, bool check_columns, int threads, const std::string& sim_spec) {
    PiecewiseLinearMap f = resolve_map(map_source);
    SweepConfig cfg;
    if (!schedule.empty() && !n_list.empty())
        throw CLI::ValidationError("use either --n-schedule or --n-list, not both");
    if (!schedule.empty())
        cfg.n_values = parse_n_schedule(schedule);
    else if (!n_list.empty())
        cfg.n_values = parse_n_list(n_list);
    else
        throw CLI::ValidationError("one of --n-schedule or --n-list is required");
    if (mode == "exact")
        cfg.mode = SweepMode::Exact;
    else if (mode == "float")
        cfg.mode = SweepMode::Float;
    cfg.bits = bits;
    cfg.check_columns = check_columns;
    cfg.threads = threads;
    if (!sim_spec.empty()) cfg.simulate = parse_sim_block(sim_spec);

    SweepResult result = run_sweep(f, cfg);
    if (result.exit_code == kExitValidation) {
        std::cerr << "validation failure: " << result.failure_message << '\n';
        return kExitValidation;
    }
    std::ostream* out = nullptr;
    auto holder = open_output(out_path, out);
    write_sweep_csv(result, cfg, *out);

    if (cfg.simulate) {
        SimCheckResult sim = run_simulation_check(f, cfg);
        std::string sim_path = (out_path.empty() || out_path == "-") ? "" : out_path + ".sim.csv";
        std::ostream* sim_out = nullptr;
        auto sim_holder = open_output(sim_path, sim_out);
        write_simcheck_csv(sim, *sim_out);
    }
    for (const SweepRow& row : result.rows)
        if (!row.ok) std::cerr << "N=" << row.n << " failed: " << row.error << '\n';
    return result.exit_code;
}

int run_matrix_cmd(const std::string& map_source, std::int64_t n, const std::string& mode,
                   const std::string& out_path, int threads) {
    PiecewiseLinearMap f = resolve_map(map_source);
    EquivolumePartition part = EquivolumePartition::uniform(n);
    std::ostream* out = nullptr;
    auto holder = open_output(out_path, out);
    bool exact = mode == "exact" || (mode == "auto" && f.is_exact());
    if (exact)
        dump_matrix_csv(build_transition_matrix(f, part, threads), *out);
    else
        dump_matrix_csv(build_transition_matrix_float(f, part, threads), *out);
    return 0;
}

int run_simulate_cmd(const std::string& map_source, std::int64_t n, std::int64_t steps,
                     std::uint64_t seed, const std::string& out_path) {
    PiecewiseLinearMap f = resolve_map(map_source);
    EquivolumePartition part = EquivolumePartition::uniform(n);
    Trajectory traj = simulate_chain(f, part, steps, seed);
    std::ostream* out = nullptr;
    auto holder = open_output(out_path, out);
    *out << "t,state\n";
    for (std::size_t t = 0; t < traj.states.size(); ++t)
        *out << t << ',' << traj.states[t] << '\n';
    return 0;
}

int run_validate_cmd(const std::string& map_source) {
    PiecewiseLinearMap f = resolve_map(map_source);
    InvarianceReport report = f.verify_lebesgue_invariance();
    std::cout << "mode: " << (f.is_exact() ? "exact" : "float") << '\n';
    std::cout << "branches: " << f.branch_count() << '\n';
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        const Branch& b = f.branch(i);
        std::cout << "  slope " << (b.sign < 0 ? "-" : "+") << b.magnitude.describe() << '\n';
    }
    std::cout << "lebesgue_invariant: " << (report.holds ? "yes" : "no") << '\n';
    if (!report.holds && report.witness)
        std::cout << "witness: [" << report.witness->first << ", " << report.witness->second
                  << ")\n";
    if (!report.exact_mode)
        std::cout << "max_deviation: " << report.max_deviation << '\n';
    for (const std::string& note : report.unchecked) std::cout << "unchecked: " << note << '\n';
    if (report.holds) {
        std::cout << "lyapunov: " << f.lyapunov_exponent() << '\n';
        std::cout << "defect: " << entropy_defect(f) << '\n';
        std::cout << "predicted_limit: " << predicted_limit(f) << '\n';
    }
    return report.holds ? 0 : kExitValidation;
}

int run_conjugacy_cmd(const std::string& map_source, const std::string& conj_label,
                      const std::string& n_list, const std::string& sim_spec) {
    PiecewiseLinearMap f = resolve_map(map_source);
    Homeomorphism hom = Homeomorphism::by_label(conj_label);
    bool tent_pair = conj_label == "sine-squared" && map_source == "tent:m=2";
    ConjugateSystem sys = tent_pair
                              ? ConjugateSystem::tent_logistic()
                              : ConjugateSystem(std::move(f), std::move(hom));
    std::cout << "conjugacy: " << sys.hom().label
              << (sys.has_direct() ? " (direct form attached)" : "") << '\n';
    std::optional<SimBlock> sim;
    if (!sim_spec.empty()) sim = parse_sim_block(sim_spec);
    for (std::int64_t n : parse_n_list(n_list)) {
        EquivolumePartition part = EquivolumePartition::uniform(n);
        ExactMatrix base = build_transition_matrix(sys.base(), part);
        ExactMatrix conj = transition_matrix_conjugate(sys, part);
        std::cout << "N=" << n << " exact-path identical: " << (base == conj ? "yes" : "no")
                  << "  H=" << shannon_entropy(base);
        if (sim) {
            FloatMatrix mc = monte_carlo_conjugate_matrix(sys, part, sim->steps, sim->seed);
            double dist = 0.0;
            for (std::int64_t row = 1; row <= n; ++row) {
                std::map<std::int64_t, double> reference;
                for (const auto& [col, p] : base.row(row)) reference[col] = p.to_double();
                for (const auto& [col, p] : mc.row(row)) {
                    auto it = reference.find(col);
                    double p0 = it == reference.end() ? 0.0 : it->second;
                    if (it != reference.end()) reference.erase(it);
                    dist = std::max(dist, std::abs(p - p0));
                }
                if (!mc.row(row).empty())
                    for (const auto& [col, p0] : reference) dist = std::max(dist, p0);
            }
            std::cout << "  mc_max_entry_distance=" << dist;
        }
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy of coarse-grained chaotic interval maps"};
    app.require_subcommand(1);

    std::string map_source, schedule, n_list, mode = "auto", out_path, sim_spec;
    std::string conj_label = "sine-squared";
    bool bits = false, check_columns = false;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    std::int64_t n = 0, steps = 0;
    std::uint64_t seed = 0;

    auto* sweep = app.add_subcommand("sweep", "entropy convergence sweep over N");
    sweep->add_option("--map", map_source, "map file or built-in (tent:m=3/2, tent:m=sqrt2)")
        ->required();
    sweep->add_option("--n-schedule", schedule, "geometric schedule, e.g. 2x:4..65536");
    sweep->add_option("--n-list", n_list, "explicit N list, e.g. 3,10,100");
    sweep->add_option("--mode", mode, "exact | float | auto")
        ->check(CLI::IsMember({"exact", "float", "auto"}));
    sweep->add_option("--out", out_path, "output CSV path ('-' for stdout)");
    sweep->add_flag("--bits", bits, "entropy columns in bits");
    sweep->add_flag("--check-columns", check_columns, "verify uniform stationarity per N");
    sweep->add_option("--threads", threads, "thread budget");
    sweep->add_option("--simulate", sim_spec, "T=<steps>,seed=<seed> simulation cross-check");

    auto* matrix = app.add_subcommand("matrix", "dump a transition matrix (sparse triplet CSV)");
    matrix->add_option("--map", map_source)->required();
    matrix->add_option("--N", n, "number of cells")->required()->check(CLI::PositiveNumber);
    matrix->add_option("--mode", mode)->check(CLI::IsMember({"exact", "float", "auto"}));
    matrix->add_option("--out", out_path);
    matrix->add_option("--threads", threads);

    auto* simulate = app.add_subcommand("simulate", "sample a trajectory of the induced chain");
    simulate->add_option("--map", map_source)->required();
    simulate->add_option("--N", n)->required()->check(CLI::PositiveNumber);
    simulate->add_option("--steps", steps)->required()->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", seed)->required();
    simulate->add_option("--out", out_path);

    auto* validate = app.add_subcommand("validate", "invariance check and limit data");
    validate->add_option("--map", map_source)->required();

    auto* conjugacy = app.add_subcommand("conjugacy", "conjugacy invariance check");
    conjugacy->add_option("--map", map_source, "base map (default tent:m=2)");
    conjugacy->add_option("--conjugacy", conj_label, "identity | sine-squared");
    conjugacy->add_option("--n-list", n_list)->required();
    conjugacy->add_option("--simulate", sim_spec, "T=<steps>,seed=<seed> Monte Carlo check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed())
            return run_sweep_cmd(map_source, schedule, n_list, mode, out_path, bits, check_columns,
                                 threads, sim_spec);
        if (matrix->parsed()) return run_matrix_cmd(map_source, n, mode, out_path, threads);
        if (simulate->parsed()) return run_simulate_cmd(map_source, n, steps, seed, out_path);
        if (validate->parsed()) return run_validate_cmd(map_source);
        if (conjugacy->parsed())
            return run_conjugacy_cmd(map_source.empty() ? "tent:m=2" : map_source, conj_label,
                                     n_list, sim_spec);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
