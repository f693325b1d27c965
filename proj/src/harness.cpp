#include "kinpart/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kinpart/baselines.hpp"
#include "kinpart/deposit.hpp"
#include "kinpart/eulerian.hpp"
#include "kinpart/rng.hpp"
#include "kinpart/rte_mima.hpp"
#include "kinpart/vpbgk.hpp"

namespace kinpart {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kWaveNumber = 0.5;  // Landau / TSI perturbation wave number

bool is_particle_scheme(Scheme s) {
    return s == Scheme::MimaPart1 || s == Scheme::MimaPart2 || s == Scheme::MomentGuided ||
           s == Scheme::FullPic;
}

}  // namespace

Scheme scheme_from_string(const std::string& s) {
    if (s == "mima_part_1") return Scheme::MimaPart1;
    if (s == "mima_part_2") return Scheme::MimaPart2;
    if (s == "mima_grid") return Scheme::MimaGrid;
    if (s == "moment_guided") return Scheme::MomentGuided;
    if (s == "full_pic") return Scheme::FullPic;
    if (s == "diffusion_limit") return Scheme::DiffusionLimit;
    if (s == "drift_diffusion_limit") return Scheme::DriftDiffusionLimit;
    throw std::invalid_argument("unknown scheme: " + s);
}

TestCase case_from_string(const std::string& s) {
    if (s == "rte_periodic") return TestCase::RtePeriodic;
    if (s == "landau") return TestCase::Landau;
    if (s == "tsi") return TestCase::Tsi;
    throw std::invalid_argument("unknown case: " + s);
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::MimaPart1: return "mima_part_1";
        case Scheme::MimaPart2: return "mima_part_2";
        case Scheme::MimaGrid: return "mima_grid";
        case Scheme::MomentGuided: return "moment_guided";
        case Scheme::FullPic: return "full_pic";
        case Scheme::DiffusionLimit: return "diffusion_limit";
        case Scheme::DriftDiffusionLimit: return "drift_diffusion_limit";
    }
    return "?";
}

std::string to_string(TestCase c) {
    switch (c) {
        case TestCase::RtePeriodic: return "rte_periodic";
        case TestCase::Landau: return "landau";
        case TestCase::Tsi: return "tsi";
    }
    return "?";
}

void RunConfig::validate() const {
    if (!(eps > 0.0)) throw std::invalid_argument("config: epsilon must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("config: t_end must be >= 0");
    if (nx < 4) throw std::invalid_argument("config: nx must be >= 4");
    if (nv < 2) throw std::invalid_argument("config: nv must be >= 2");
    if (np < 1) throw std::invalid_argument("config: np must be >= 1");
    if (spline_order < 0 || spline_order > 3)
        throw std::invalid_argument("config: spline_order must be in 0..3");
    if (!(v_max > 0.0)) throw std::invalid_argument("config: v_max must be > 0");
    if (scheme == Scheme::MimaPart1 && is_vp_case())
        throw std::invalid_argument("config: mima_part_1 supports the rte_periodic case only");
    if (scheme == Scheme::DiffusionLimit && is_vp_case())
        throw std::invalid_argument("config: diffusion_limit supports the rte_periodic case only");
    if (scheme == Scheme::DriftDiffusionLimit && !is_vp_case())
        throw std::invalid_argument("config: drift_diffusion_limit needs a field case (landau/tsi)");
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    auto as_double = [&](const char* what) {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(std::string("config: bad ") + what +
                                                             " value: " + value);
        return v;
    };
    auto as_long = [&](const char* what) {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(std::string("config: bad ") + what +
                                                             " value: " + value);
        return v;
    };
    if (key == "scheme") cfg.scheme = scheme_from_string(value);
    else if (key == "case") cfg.test_case = case_from_string(value);
    else if (key == "epsilon") cfg.eps = as_double("epsilon");
    else if (key == "dt") cfg.dt = as_double("dt");
    else if (key == "t_end") cfg.t_end = as_double("t_end");
    else if (key == "nx") cfg.nx = static_cast<int>(as_long("nx"));
    else if (key == "nv") cfg.nv = static_cast<int>(as_long("nv"));
    else if (key == "np") cfg.np = as_long("np");
    else if (key == "spline_order") cfg.spline_order = static_cast<int>(as_long("spline_order"));
    else if (key == "v_max") cfg.v_max = as_double("v_max");
    else if (key == "alpha") cfg.alpha = as_double("alpha");
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_long("seed"));
    else if (key == "out") cfg.out_path = value;
    else if (key == "snapshot_times") {
        cfg.snapshot_times.clear();
        std::istringstream ss(value);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) cfg.snapshot_times.push_back(std::stod(tok));
    } else {
        throw std::invalid_argument("config: unknown key: " + key);
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto ke = key.find_last_not_of(" \t");
        key = key.substr(0, ke + 1);
        const auto vb = value.find_first_not_of(" \t");
        value = vb == std::string::npos ? "" : value.substr(vb);
        apply_key_value(cfg, key, value);
    }
    return cfg;
}

double electric_energy(const GridField& E) {
    double s = 0.0;
    for (int i = 0; i < E.grid.nx; ++i) s += E[i] * E[i];
    return std::sqrt(s * E.grid.dx());
}

double linf_error(const GridField& a, const GridField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("linf_error: grid mismatch");
    double m = 0.0;
    for (int i = 0; i < a.grid.nx; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

namespace {

struct CaseSetup {
    SpatialGrid grid;
    VelocityModel model;
    double alpha = 0.0;
};

CaseSetup case_setup(const RunConfig& cfg) {
    CaseSetup s;
    if (cfg.test_case == TestCase::RtePeriodic) {
        s.grid = SpatialGrid(cfg.nx, 1.0);
        s.model = VelocityModel::flat_rte();
    } else {
        s.grid = SpatialGrid(cfg.nx, kTwoPi / kWaveNumber);
        s.model = VelocityModel::maxwellian_vp(cfg.v_max);
        s.alpha = cfg.alpha;
    }
    return s;
}

GridField initial_rho(const RunConfig& cfg, const SpatialGrid& grid) {
    GridField rho(grid);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.node(i);
        if (cfg.test_case == TestCase::RtePeriodic)
            rho[i] = 1.0 + std::cos(kTwoPi * (x + 0.5));
        else
            rho[i] = 1.0 + cfg.alpha * std::cos(kWaveNumber * x);
    }
    return rho;
}

// g0 in phase space; zero except for the two-stream case.
double initial_g(const RunConfig& cfg, double x, double v) {
    if (cfg.test_case != TestCase::Tsi) return 0.0;
    return 0.3989422804014327 * (v * v - 1.0) * std::exp(-0.5 * v * v) *
           (1.0 + cfg.alpha * std::cos(kWaveNumber * x));
}

// f0 for the schemes whose markers carry f itself.
double initial_f(const RunConfig& cfg, const VelocityModel& model, double x, double v) {
    double rho;
    if (cfg.test_case == TestCase::RtePeriodic)
        rho = 1.0 + std::cos(kTwoPi * (x + 0.5));
    else
        rho = 1.0 + cfg.alpha * std::cos(kWaveNumber * x);
    return rho * model.maxwellian(v) + initial_g(cfg, x, v);
}

ParticleEnsemble sample_particles(const RunConfig& cfg, const SpatialGrid& grid,
                                  const VelocityModel& model) {
    ParticleEnsemble ens;
    ens.resize(static_cast<std::size_t>(cfg.np));
    Rng rng(cfg.seed);
    for (std::size_t k = 0; k < ens.np(); ++k) {
        ens.x[k] = rng.uniform(0.0, grid.lx);
        ens.v[k] = rng.uniform(model.v_lo, model.v_hi);
    }
    return ens;
}

// Weights w_k = G(x_k, v_k) Lx Lv / Np for a phase-space function G.
template <class G>
void set_weights(ParticleEnsemble& ens, const SpatialGrid& grid, const VelocityModel& model,
                 G&& g0) {
    const double scale = grid.lx * model.lv() / static_cast<double>(ens.np());
    for (std::size_t k = 0; k < ens.np(); ++k)
        ens.w[k] = g0(ens.x[k], ens.v[k]) * scale;
}

struct SnapshotRecorder {
    std::vector<double> pending;
    Diagnostics* diag = nullptr;

    SnapshotRecorder(const RunConfig& cfg, Diagnostics& d) : pending(cfg.snapshot_times), diag(&d) {
        std::sort(pending.begin(), pending.end());
    }

    void observe(double t, double dt, const GridField& rho) {
        while (!pending.empty() && t >= pending.front() - 0.5 * dt) {
            Snapshot snap;
            snap.t = t;
            snap.x.resize(static_cast<std::size_t>(rho.grid.nx));
            snap.rho.resize(static_cast<std::size_t>(rho.grid.nx));
            for (int i = 0; i < rho.grid.nx; ++i) {
                snap.x[static_cast<std::size_t>(i)] = rho.grid.node(i);
                snap.rho[static_cast<std::size_t>(i)] = rho[i];
            }
            diag->snapshots.push_back(std::move(snap));
            pending.erase(pending.begin());
        }
    }
};

}  // namespace

Diagnostics run_case(const RunConfig& cfg) {
    cfg.validate();
    const CaseSetup setup = case_setup(cfg);
    const SpatialGrid& grid = setup.grid;
    const VelocityModel& model = setup.model;
    const StiffCoeffs coeffs = stiff_coeffs(cfg.eps, cfg.dt);
    const long nsteps = static_cast<long>(std::llround(cfg.t_end / cfg.dt));
    const bool vp = cfg.is_vp_case();

    Diagnostics diag;
    SnapshotRecorder rec(cfg, diag);
    GridField rho = initial_rho(cfg, grid);
    GridField E;
    if (vp) E = poisson_solve(rho);

    auto record = [&](double t, const GridField& r, const GridField* e) {
        diag.times.push_back(t);
        if (e) diag.electric_energy.push_back(electric_energy(*e));
        rec.observe(t, cfg.dt, r);
    };

    const auto t0 = std::chrono::steady_clock::now();

    switch (cfg.scheme) {
        case Scheme::DiffusionLimit: {
            record(0.0, rho, nullptr);
            for (long n = 0; n < nsteps; ++n) {
                rho = diffusion_cn_step(rho, cfg.dt);
                record((n + 1) * cfg.dt, rho, nullptr);
            }
            break;
        }
        case Scheme::DriftDiffusionLimit: {
            record(0.0, rho, &E);
            for (long n = 0; n < nsteps; ++n) {
                drift_diffusion_cn_step(rho, E, cfg.dt);
                record((n + 1) * cfg.dt, rho, &E);
            }
            break;
        }
        case Scheme::MimaPart1: {
            MicroMacroState st{rho, sample_particles(cfg, grid, model), model, coeffs, 0.0};
            RteOptions opts;
            opts.spline_order = cfg.spline_order;
            record(0.0, st.rho, nullptr);
            for (long n = 0; n < nsteps; ++n) {
                mima1_step(st, opts);
                record(st.t, st.rho, nullptr);
            }
            rho = st.rho;
            break;
        }
        case Scheme::MimaPart2: {
            if (!vp) {
                MicroMacroState st{rho, sample_particles(cfg, grid, model), model, coeffs, 0.0};
                RteOptions opts;
                opts.spline_order = cfg.spline_order;
                record(0.0, st.rho, nullptr);
                for (long n = 0; n < nsteps; ++n) {
                    mima2_step(st, opts);
                    record(st.t, st.rho, nullptr);
                }
                rho = st.rho;
            } else {
                VPState st{rho, E, sample_particles(cfg, grid, model), model, coeffs, 0.0};
                set_weights(st.micro, grid, model,
                            [&](double x, double v) { return initial_g(cfg, x, v); });
                VPOptions opts;
                opts.spline_order = cfg.spline_order;
                record(0.0, st.rho, &st.E);
                for (long n = 0; n < nsteps; ++n) {
                    vp_step(st, opts);
                    record(st.t, st.rho, &st.E);
                }
                rho = st.rho;
                E = st.E;
            }
            break;
        }
        case Scheme::MimaGrid: {
            EulerianState st;
            st.rho = rho;
            st.model = model;
            st.coeffs = coeffs;
            st.with_field = vp;
            st.micro = PhaseSpaceGrid(grid, cfg.nv, model.v_lo, model.v_hi);
            if (cfg.test_case == TestCase::Tsi) {
                for (int i = 0; i < grid.nx; ++i) {
                    const double x = (i + 0.5) * grid.dx();  // staggered node x_{i+1/2}
                    for (int j = 0; j < cfg.nv; ++j)
                        st.micro.at(i, j) = initial_g(cfg, x, st.micro.vnodes[static_cast<std::size_t>(j)]);
                }
            }
            if (vp) st.E = E;
            EulerianOptions opts;
            record(0.0, st.rho, vp ? &st.E : nullptr);
            for (long n = 0; n < nsteps; ++n) {
                euler_step(st, opts);
                record(st.t, st.rho, vp ? &st.E : nullptr);
            }
            rho = st.rho;
            if (vp) E = st.E;
            break;
        }
        case Scheme::FullPic: {
            FullPicState st;
            st.model = model;
            st.coeffs = coeffs;
            st.with_field = vp;
            st.particles = sample_particles(cfg, grid, model);
            set_weights(st.particles, grid, model,
                        [&](double x, double v) { return initial_f(cfg, model, x, v); });
            // rescale so the total weight carries the exact initial mass
            // (mean density 1 in every case); the Poisson solve needs this
            double total = 0.0;
            for (double w : st.particles.w) total += w;
            if (total != 0.0)
                for (double& w : st.particles.w) w *= grid.lx / total;
            st.total_weight = grid.lx;
            st.rho = deposit_density(st.particles, grid, cfg.spline_order);
            if (vp) st.E = poisson_solve(st.rho);
            record(0.0, st.rho, vp ? &st.E : nullptr);
            for (long n = 0; n < nsteps; ++n) {
                full_pic_step(st, cfg.spline_order);
                record(st.t, st.rho, vp ? &st.E : nullptr);
            }
            rho = st.rho;
            if (vp) E = st.E;
            break;
        }
        case Scheme::MomentGuided: {
            ParticleEnsemble ens = sample_particles(cfg, grid, model);
            set_weights(ens, grid, model,
                        [&](double x, double v) { return initial_f(cfg, model, x, v); });
            double total = 0.0;
            for (double w : ens.w) total += w;
            if (total != 0.0)
                for (double& w : ens.w) w *= grid.lx / total;
            const double sigma = vp ? 1.0 : 1.0 / 3.0;
            mg_match(ens, rho, model);
            record(0.0, rho, vp ? &E : nullptr);
            double t = 0.0;
            for (long n = 0; n < nsteps; ++n) {
                mg_f_step(ens, rho, model, coeffs, cfg.spline_order);
                const GridField vf = deposit_flux(ens, grid, cfg.spline_order);
                GridField rho_new = mg_rho_step(rho, vf, coeffs, sigma);
                if (vp) {
                    const GridField drift = upwind_drift_div(E, rho);
                    for (int i = 0; i < grid.nx; ++i)
                        rho_new[i] -= coeffs.diff1 * sigma * drift[i];
                    E = poisson_solve(rho_new);
                }
                rho = rho_new;
                mg_match(ens, rho, model);
                t = (n + 1) * cfg.dt;
                record(t, rho, vp ? &E : nullptr);
            }
            break;
        }
    }

    const auto t1 = std::chrono::steady_clock::now();
    diag.steps = nsteps;
    diag.seconds_per_step =
        nsteps > 0 ? std::chrono::duration<double>(t1 - t0).count() / static_cast<double>(nsteps)
                   : 0.0;
    diag.final_rho = rho;
    return diag;
}

ConvergenceResult convergence_study(const RunConfig& cfg, const std::vector<double>& dts,
                                    double reference_dt, bool use_limit_reference) {
    RunConfig ref_cfg = cfg;
    ref_cfg.dt = reference_dt;
    if (use_limit_reference)
        ref_cfg.scheme = cfg.is_vp_case() ? Scheme::DriftDiffusionLimit : Scheme::DiffusionLimit;
    const GridField rho_ref = run_case(ref_cfg).final_rho;

    ConvergenceResult res;
    for (double dt : dts) {
        RunConfig c = cfg;
        c.dt = dt;
        GridField rho;
        try {
            rho = run_case(c).final_rho;
        } catch (const std::exception& e) {
            throw std::runtime_error("convergence_study: run at dt=" + std::to_string(dt) +
                                     " failed: " + e.what());
        }
        res.points.push_back({dt, linf_error(rho, rho_ref)});
    }

    // Fit on the non-saturated range: the longest suffix (finest dts) on which
    // the error still decreases with dt. Coarse-dt points past the error peak
    // sit outside the asymptotic regime and would bias the slope.
    std::size_t first = 0;
    if (res.points.size() >= 2) {
        first = res.points.size() - 1;
        while (first > 0 && res.points[first - 1].error > res.points[first].error) --first;
        if (res.points.size() - first < 2) first = 0;
    }

    // least squares of log(err) vs log(dt); exact zeros are excluded
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = first; i < res.points.size(); ++i) {
        const auto& p = res.points[i];
        if (p.error <= 0.0) continue;
        const double lx = std::log(p.dt), ly = std::log(p.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n >= 2) res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return res;
}

void emit_csv(const Diagnostics& diag, const std::string& path) {
    std::ostringstream out;
    char buf[40];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    out << "t,electric_energy\n";
    for (std::size_t i = 0; i < diag.electric_energy.size(); ++i)
        out << fmt(diag.times[i]) << ',' << fmt(diag.electric_energy[i]) << '\n';
    for (const Snapshot& s : diag.snapshots) {
        out << "# snapshot t=" << fmt(s.t) << '\n';
        out << "x,rho\n";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << fmt(s.x[i]) << ',' << fmt(s.rho[i]) << '\n';
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
    f << out.str();
    if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace kinpart
