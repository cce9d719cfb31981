#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvnb/equilibria.hpp"
#include "curvnb/scenario.hpp"
#include "curvnb/verify.hpp"

// curvnb: scenario-driven simulation and analysis for the n-body problem on
// surfaces of constant nonzero curvature.
//
// Exit codes for `simulate`: 0 = reached t_end, 2 = invalid scenario,
// 3 = stopped at a singularity event (outputs are still written).

namespace {

using namespace curvnb;
using nlohmann::json;

struct IntegratorFlags {
    double rel_tol = -1.0, abs_tol = -1.0, dt0 = -1.0, event_threshold = -1.0;
    int samples = -1;

    void apply(Scenario& sc) const {
        if (rel_tol > 0) sc.integrator.rel_tol = rel_tol;
        if (abs_tol > 0) sc.integrator.abs_tol = abs_tol;
        if (dt0 > 0) sc.integrator.initial_dt = dt0;
        if (event_threshold > 0) sc.integrator.singularity_event_threshold = event_threshold;
        if (samples >= 0) sc.output_samples = samples;
    }
};

void add_integrator_flags(CLI::App* cmd, IntegratorFlags& fl) {
    cmd->add_option("--rel-tol", fl.rel_tol, "relative tolerance of the embedded RK pair");
    cmd->add_option("--abs-tol", fl.abs_tol, "absolute tolerance of the embedded RK pair");
    cmd->add_option("--dt0", fl.dt0, "initial step size");
    cmd->add_option("--event-threshold", fl.event_threshold,
                    "singularity event threshold on the minimal pair gap");
    cmd->add_option("--samples", fl.samples, "downsample outputs to this many rows (0 = all)");
}

int run_scenario(const Scenario& sc, const std::string& out_dir) {
    const SystemState state = sc.build_state();
    const Trajectory traj = integrate(state, sc.t_end, sc.integrator);

    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/" + sc.name;
    write_file_atomic(base + "_trajectory.csv", trajectory_csv(traj.samples, sc.output_samples));
    write_file_atomic(base + "_diagnostics.csv", diagnostics_csv(traj.samples, sc.output_samples));
    write_file_atomic(base + "_summary.json", summary_json(sc, traj));
    std::cout << sc.name << ": " << to_string(traj.stop.kind) << " at t = "
              << format_double(traj.samples.empty() ? 0.0 : traj.samples.back().time) << "\n";
    return traj.stop.kind == StopReason::Kind::singularity_event ? 3 : 0;
}

int cmd_simulate(const std::string& path, const std::string& out_dir,
                 const IntegratorFlags& fl) {
    try {
        Scenario sc = Scenario::from_file(path);
        fl.apply(sc);
        return run_scenario(sc, out_dir);
    } catch (const ScenarioError& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_solve(const std::string& equation, double target, double lo, double hi, int grid) {
    const Equation& eq = equation_by_id(equation);
    RootScan scan;
    if (lo < hi)
        scan = solve_roots(eq, target, {{lo, hi}}, grid);
    else
        scan = solve_roots(eq, target, grid);
    json out;
    out["equation"] = scan.equation;
    out["target"] = scan.target;
    json roots = json::array();
    for (const Root& r : scan.roots)
        roots.push_back({{"value", r.value}, {"residual", r.residual}, {"tangency", r.tangency}});
    out["roots"] = roots;
    out["count"] = scan.roots.size();
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_scan(const std::string& equation, const std::vector<double>& targets, int grid) {
    const Equation& eq = equation_by_id(equation);
    json out = json::array();
    for (double t : targets) {
        const RootScan scan = solve_roots(eq, t, grid);
        std::size_t tang = 0;
        for (const Root& r : scan.roots) tang += r.tangency ? 1 : 0;
        out.push_back({{"target", t}, {"count", scan.roots.size()}, {"tangency", tang}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_verify(const std::string& id, unsigned seed) {
    try {
        const CheckResult res = run_check(id, seed);
        std::cout << res.id << ": " << (res.pass ? "PASS" : "FAIL") << "\n";
        for (const std::string& line : res.evidence) std::cout << line << "\n";
        return res.pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "known ids:";
        for (const std::string& id2 : verify_ids()) std::cerr << " " << id2;
        std::cerr << "\n";
        return 2;
    }
}

int cmd_batch(const std::vector<std::string>& paths, const std::string& out_dir, int jobs) {
    std::atomic<std::size_t> next{0};
    std::atomic<int> worst{0};
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(paths.size())));
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= paths.size()) return;
            int rc;
            try {
                rc = run_scenario(Scenario::from_file(paths[k]), out_dir);
            } catch (const std::exception& e) {
                std::cerr << paths[k] << ": " << e.what() << "\n";
                rc = 2;
            }
            int cur = worst.load();
            while (rc > cur && !worst.compare_exchange_weak(cur, rc)) {
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return worst.load();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"n-body dynamics on constant-curvature surfaces"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = ".";
    IntegratorFlags fl;
    CLI::App* simulate = app.add_subcommand("simulate", "integrate a scenario file");
    simulate->add_option("scenario", scenario_path, "scenario JSON file")->required();
    simulate->add_option("--out-dir", out_dir, "output directory");
    add_integrator_flags(simulate, fl);

    std::string equation = "eq4";
    double target = 0.0, lo = 0.0, hi = 0.0;
    int grid = 4096;
    CLI::App* solve = app.add_subcommand("solve", "find roots of an equilibrium equation");
    solve->add_option("--equation", equation, "equation id (eq4, eq5, ratio1, ratio2, eq7, ...)")
        ->required();
    solve->add_option("--target", target, "target value of omega^2/m (or omega^2)")->required();
    solve->add_option("--lo", lo, "scan range lower bound (default: natural domain)");
    solve->add_option("--hi", hi, "scan range upper bound");
    solve->add_option("--grid", grid, "scan grid size");

    std::vector<double> targets;
    CLI::App* scan = app.add_subcommand("scan", "root counts over a grid of targets");
    scan->add_option("--equation", equation, "equation id")->required();
    scan->add_option("--targets", targets, "target values")->required();
    scan->add_option("--grid", grid, "scan grid size");

    std::string check_id;
    unsigned seed = 1234;
    CLI::App* verify = app.add_subcommand("verify", "run a named theorem/acceptance check");
    verify->add_option("id", check_id, "check id or theorem alias (e.g. nofixH, thpar, rengon)")
        ->required();
    verify->add_option("--seed", seed, "seed for randomized checks");

    std::vector<std::string> batch_paths;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    CLI::App* batch = app.add_subcommand("batch", "run several scenarios in parallel");
    batch->add_option("scenarios", batch_paths, "scenario JSON files")->required();
    batch->add_option("--out-dir", out_dir, "output directory");
    batch->add_option("--jobs", jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir, fl);
        if (solve->parsed()) return cmd_solve(equation, target, lo, hi, grid);
        if (scan->parsed()) return cmd_scan(equation, targets, grid);
        if (verify->parsed()) return cmd_verify(check_id, seed);
        if (batch->parsed()) return cmd_batch(batch_paths, out_dir, jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
