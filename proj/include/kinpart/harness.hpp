#pragma once

#include <string>
#include <vector>

#include "kinpart/grid.hpp"

namespace kinpart {

enum class Scheme {
    MimaPart1,
    MimaPart2,
    MimaGrid,
    MomentGuided,
    FullPic,
    DiffusionLimit,
    DriftDiffusionLimit,
};

enum class TestCase { RtePeriodic, Landau, Tsi };

Scheme scheme_from_string(const std::string& s);
TestCase case_from_string(const std::string& s);
std::string to_string(Scheme s);
std::string to_string(TestCase c);

struct RunConfig {
    Scheme scheme = Scheme::MimaPart2;
    TestCase test_case = TestCase::RtePeriodic;
    double eps = 1.0;
    double dt = 1e-2;
    double t_end = 0.1;
    int nx = 16;
    int nv = 32;          // grid schemes
    long np = 100;        // particle schemes
    int spline_order = 1;
    double v_max = 6.0;   // Maxwellian truncation
    double alpha = 0.05;  // perturbation amplitude (Landau / TSI)
    std::uint64_t seed = 0;
    std::string out_path;
    std::vector<double> snapshot_times;

    // validates ranges and scheme/case compatibility, throws on violation
    void validate() const;
    bool is_vp_case() const { return test_case != TestCase::RtePeriodic; }
};

// Flat key=value config file; '#' starts a comment. Unknown keys are errors.
RunConfig parse_config_file(const std::string& path);
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

struct Snapshot {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> rho;
};

struct Diagnostics {
    std::vector<double> times;
    std::vector<double> electric_energy;  // empty for RTE runs
    std::vector<Snapshot> snapshots;
    GridField final_rho;
    double seconds_per_step = 0.0;
    long steps = 0;
};

// sqrt( sum_i E_i^2 dx )
double electric_energy(const GridField& E);

// max_i |a_i - b_i|; throws on grid mismatch
double linf_error(const GridField& a, const GridField& b);

// Runs the configured scheme to t_end.
Diagnostics run_case(const RunConfig& cfg);

struct ConvergencePoint {
    double dt = 0.0;
    double error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;  // least-squares fit of log error vs log dt
};

// Runs the config template for every dt in the list, compares rho(T) against
// a reference run (same config with dt = reference_dt, or the matching limit
// solver when use_limit_reference is set) and fits the convergence slope on
// the non-saturated points.
ConvergenceResult convergence_study(const RunConfig& cfg, const std::vector<double>& dts,
                                    double reference_dt, bool use_limit_reference);

// Deterministic CSV: energy series as (t, energy) columns, snapshots as
// (x, rho) blocks tagged by time; 17 significant digits.
void emit_csv(const Diagnostics& diag, const std::string& path);

}  // namespace kinpart
