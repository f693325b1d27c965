#include <algorithm>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kinpart/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Micro-macro particle and grid solvers for linear kinetic equations "
                 "in the diffusion scaling"};

    std::string config_path;
    std::string scheme, test_case, out_path, snapshot_times;
    double eps = -1.0, dt = -1.0, t_end = -1.0, v_max = -1.0, alpha = -1.0;
    long nx = -1, nv = -1, np = -1, spline_order = -1, seed = -1;
    std::vector<double> dt_list;
    double reference_dt = -1.0;
    bool limit_reference = false;

    app.add_option("-c,--config", config_path, "key=value config file");
    app.add_option("--scheme", scheme,
                   "mima_part_1 | mima_part_2 | mima_grid | moment_guided | full_pic | "
                   "diffusion_limit | drift_diffusion_limit");
    app.add_option("--case", test_case, "rte_periodic | landau | tsi");
    app.add_option("--epsilon", eps, "scaling parameter");
    app.add_option("--dt", dt, "time step");
    app.add_option("--t-end", t_end, "final time");
    app.add_option("--nx", nx, "spatial cells");
    app.add_option("--nv", nv, "velocity cells (grid schemes)");
    app.add_option("--np", np, "particles (particle schemes)");
    app.add_option("--spline-order", spline_order, "deposition B-spline order (0..3)");
    app.add_option("--v-max", v_max, "velocity truncation for the Maxwellian cases");
    app.add_option("--alpha", alpha, "perturbation amplitude");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out_path, "output CSV path");
    app.add_option("--snapshot-times", snapshot_times, "comma-separated density snapshot times");
    app.add_option("--dt-list", dt_list, "run a convergence study over these time steps");
    app.add_option("--reference-dt", reference_dt, "reference time step for the study");
    app.add_flag("--limit-reference", limit_reference,
                 "compare the study against the limit solver instead of a fine-dt self run");

    CLI11_PARSE(app, argc, argv);

    try {
        kinpart::RunConfig cfg;
        if (!config_path.empty()) cfg = kinpart::parse_config_file(config_path);
        if (!scheme.empty()) kinpart::apply_key_value(cfg, "scheme", scheme);
        if (!test_case.empty()) kinpart::apply_key_value(cfg, "case", test_case);
        if (eps > 0.0) cfg.eps = eps;
        if (dt > 0.0) cfg.dt = dt;
        if (t_end >= 0.0) cfg.t_end = t_end;
        if (nx > 0) cfg.nx = static_cast<int>(nx);
        if (nv > 0) cfg.nv = static_cast<int>(nv);
        if (np > 0) cfg.np = np;
        if (spline_order >= 0) cfg.spline_order = static_cast<int>(spline_order);
        if (v_max > 0.0) cfg.v_max = v_max;
        if (alpha >= 0.0) cfg.alpha = alpha;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (!out_path.empty()) cfg.out_path = out_path;
        if (!snapshot_times.empty()) kinpart::apply_key_value(cfg, "snapshot_times", snapshot_times);
        cfg.validate();

        if (!dt_list.empty()) {
            const double ref_dt = reference_dt > 0.0 ? reference_dt : cfg.dt;
            const auto res = kinpart::convergence_study(cfg, dt_list, ref_dt, limit_reference);
            std::printf("dt,error\n");
            for (const auto& p : res.points) std::printf("%.17g,%.17g\n", p.dt, p.error);
            std::printf("# slope = %.17g\n", res.slope);
            return 0;
        }

        const kinpart::Diagnostics diag = kinpart::run_case(cfg);
        std::printf("scheme=%s case=%s steps=%ld seconds_per_step=%.3e\n",
                    kinpart::to_string(cfg.scheme).c_str(), kinpart::to_string(cfg.test_case).c_str(),
                    diag.steps, diag.seconds_per_step);
        if (!diag.electric_energy.empty())
            std::printf("final electric energy = %.17g\n", diag.electric_energy.back());
        double mn = diag.final_rho[0], mx = diag.final_rho[0];
        for (int i = 0; i < diag.final_rho.size(); ++i) {
            mn = std::min(mn, diag.final_rho[i]);
            mx = std::max(mx, diag.final_rho[i]);
        }
        std::printf("final rho range = [%.17g, %.17g]\n", mn, mx);
        if (!cfg.out_path.empty()) {
            kinpart::emit_csv(diag, cfg.out_path);
            std::printf("wrote %s\n", cfg.out_path.c_str());
        }
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
