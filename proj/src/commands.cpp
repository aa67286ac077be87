#include "lindosc/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "lindosc/csv.hpp"
#include "lindosc/decoherence.hpp"
#include "lindosc/density_matrix.hpp"
#include "lindosc/evolution.hpp"
#include "lindosc/fock.hpp"

namespace lindosc::cli {

namespace {

namespace fs = std::filesystem;

std::string check_line(const ConstraintCheck& c) {
    const char* op = c.passed ? (c.strict ? ">" : ">=") : (c.strict ? "<=" : "<");
    return c.name + ": " + format_short(c.lhs) + " " + op + " " + format_short(c.rhs);
}

std::string resolve_out_dir(const RunConfig& config, const CommandOptions& options) {
    const std::string dir = options.out_dir.empty() ? config.output.dir : options.out_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    return dir;
}

// Returns false (and prints every failing inequality) when the gate fails.
bool gate_or_report(const OscillatorParams& params, const ThermalBath& bath) {
    const ValidationReport rep = validate_constraints(params, bath);
    if (rep.passed) return true;
    for (const auto& c : rep.checks)
        if (!c.passed) std::cerr << "constraint validation failed: " << check_line(c) << "\n";
    return false;
}

void write_csv_preamble(CsvWriter& csv, const CommandOptions& options, const std::string& kind,
                        int format_version) {
    if (!options.header_comment)
        return;
    csv.comment("lindosc " + kind + " format " + std::to_string(format_version));
}

const std::vector<std::string> kTrajectoryColumns = {
    "t", "mean_q", "mean_p", "var_q", "var_p", "cov_qp", "sigma", "sigma_closed_form", "delta_qd"};

GaussianState state_at_time(const RunConfig& config, const ThermalBath& bath, double t) {
    const GaussianState initial = initial_covariance(config.state, config.params);
    if (t == 0.0) return initial;
    // Integrate to exactly t, shaving dt if t is not a multiple of it.
    long long steps = std::llround(t / config.integrator.dt);
    if (steps < 1) steps = 1;
    IntegratorConfig cfg;
    cfg.t_end = t;
    cfg.dt = t / static_cast<double>(steps);
    const double max_rate =
        std::max(config.params.lambda + std::abs(config.params.mu), config.params.omega);
    if (cfg.dt * max_rate > 0.1)
        throw std::invalid_argument("grid: dt too large for the fastest rate (dt * rate > 0.1)");
    const Trajectory traj = integrate_moments(initial, config.params,
                                              thermal_coefficients(config.params, bath), cfg, steps);
    return traj.samples.back();
}

CoordinateGrid resolve_grid(const RunConfig& config, const GaussianState& state) {
    if (config.grid.q_min)
        return {*config.grid.q_min, *config.grid.q_max, config.grid.n};
    return auto_grid(state, config.grid.n);
}

}  // namespace

std::optional<SweepAxis> sweep_axis_from_string(const std::string& name) {
    if (name == "coth_eps") return SweepAxis::coth_eps;
    if (name == "delta") return SweepAxis::delta;
    if (name == "r") return SweepAxis::r;
    if (name == "lambda") return SweepAxis::lambda;
    return std::nullopt;
}

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::coth_eps: return "coth_eps";
        case SweepAxis::delta: return "delta";
        case SweepAxis::r: return "r";
        case SweepAxis::lambda: return "lambda";
    }
    return "?";
}

int cmd_simulate(const RunConfig& config, const CommandOptions& options) {
    try {
        const ThermalBath bath = config.make_bath();
        if (!gate_or_report(config.params, bath)) return kExitValidation;

        const Trajectory traj =
            integrate(config.state, config.params, bath, config.integrator, config.sample_stride);
        const DecoherenceReport report = build_report(config.params, bath, config.state, traj);

        const std::string dir = resolve_out_dir(config, options);

        CsvWriter csv(dir + "/trajectory.csv");
        write_csv_preamble(csv, options, "trajectory", config.output.format_version);
        csv.header(kTrajectoryColumns);
        for (const GaussianState& s : traj.samples) {
            const double sigma = generalized_uncertainty(s);
            csv.numeric_row({s.t, s.mean_q, s.mean_p, s.var_q, s.var_p, s.cov_qp, sigma,
                             sigma_closed_form(config.state, config.params, bath, s.t),
                             delta_qd(s, config.params.hbar)});
        }

        std::ofstream rep(dir + "/report.txt", std::ios::binary);
        if (!rep) throw std::runtime_error("cannot open for writing: " + dir + "/report.txt");
        rep << "lindosc simulation report\n\nconstraint checks\n";
        for (const auto& c : validate_constraints(config.params, bath).checks)
            rep << "  " << (c.passed ? "pass" : "FAIL") << "  " << check_line(c) << "\n";
        rep << "\nresults\n";
        rep << "  delta_qd_infinity = " << format_short(report.delta_qd_inf) << "\n";
        rep << "  t_deco = " << format_short(report.t_deco) << "\n";
        rep << "  t_rel = " << format_short(report.t_rel) << "\n";
        rep << "  regime = " << to_string(report.regime) << "\n";
        rep << "  sigma_floor = " << format_short(report.sigma_floor) << "\n";
        rep << "  sigma_be = " << format_short(report.sigma_be) << "\n";
        rep << "  sigma_mb = " << format_short(report.sigma_mb) << "\n";
        rep << "  sigma_final = "
            << format_short(generalized_uncertainty(traj.samples.back())) << "\n";
        rep << "  delta_qd_final = " << format_short(report.delta_qd_t.back()) << "\n";
        if (!rep) throw std::runtime_error("write failure: " + dir + "/report.txt");
        return kExitOk;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "simulate: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << "simulate: " << ex.what() << "\n";
        return kExitIo;
    }
}

int cmd_sweep(const RunConfig& config, const CommandOptions& options, SweepAxis axis,
              const std::vector<double>& values) {
    try {
        const std::string dir = resolve_out_dir(config, options);
        CsvWriter csv(dir + "/sweep.csv");
        write_csv_preamble(csv, options, "sweep", config.output.format_version);
        csv.header({"axis", "value", "delta_qd_infinity", "t_deco", "t_rel", "sigma_infinity",
                    "regime", "status"});

        const double nan = std::numeric_limits<double>::quiet_NaN();
        for (double v : values) {
            RunConfig point = config;
            switch (axis) {
                case SweepAxis::coth_eps: point.bath = {false, v, 1.0}; break;
                case SweepAxis::delta: point.state.delta = v; break;
                case SweepAxis::r: point.state.r = v; break;
                case SweepAxis::lambda: point.params.lambda = v; break;
            }
            std::vector<std::string> cells = {to_string(axis), format_sci(v)};
            try {
                const ThermalBath bath = point.make_bath();
                point.state.require_valid();
                const ValidationReport rep = validate_constraints(point.params, bath);
                if (!rep.passed) throw std::invalid_argument(rep.first_failure()->name);

                const GaussianState eq = asymptotic_state(point.params, bath);
                const double sigma_inf = generalized_uncertainty(eq);
                cells.push_back(format_sci(delta_qd_infinity(bath)));
                cells.push_back(format_sci(decoherence_time_thermal(point.params, bath, point.state)));
                cells.push_back(format_sci(relaxation_time(point.params)));
                cells.push_back(format_sci(sigma_inf));
                cells.push_back(to_string(classify_fluctuation_regime(point.params, bath, sigma_inf)));
                cells.push_back("ok");
            } catch (const std::invalid_argument&) {
                cells.insert(cells.end(),
                             {format_sci(nan), format_sci(nan), format_sci(nan), format_sci(nan),
                              "", "constraint-violated"});
            }
            csv.row(cells);
        }
        return kExitOk;
    } catch (const std::exception& ex) {
        std::cerr << "sweep: " << ex.what() << "\n";
        return kExitIo;
    }
}

int cmd_grid(const RunConfig& config, const CommandOptions& options, std::optional<double> time) {
    try {
        const ThermalBath bath = config.make_bath();
        if (!gate_or_report(config.params, bath)) return kExitValidation;
        if (time && *time < 0.0) {
            std::cerr << "grid: time must be >= 0\n";
            return kExitValidation;
        }

        DensityMatrixGrid rho;
        if (time) {
            const GaussianState state = state_at_time(config, bath, *time);
            rho = evaluate_rho(state, resolve_grid(config, state), config.params.hbar);
        } else {
            const GaussianState eq = asymptotic_state(config.params, bath);
            rho = steady_state_rho(config.params, bath, resolve_grid(config, eq));
        }

        const std::string dir = resolve_out_dir(config, options);
        CsvWriter csv(dir + "/rho_grid.csv");
        write_csv_preamble(csv, options, "rho_grid", config.output.format_version);
        if (options.header_comment)
            csv.comment(time ? "t = " + format_sci(*time) : "t = steady");
        csv.header({"q", "q_prime", "re_rho", "im_rho"});
        for (int i = 0; i < rho.grid.n; ++i)
            for (int j = 0; j < rho.grid.n; ++j)
                csv.numeric_row({rho.grid.point(i), rho.grid.point(j), rho.values(i, j).real(),
                                 rho.values(i, j).imag()});
        return kExitOk;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "grid: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << "grid: " << ex.what() << "\n";
        return kExitIo;
    }
}

int cmd_verify(const RunConfig& config, const CommandOptions& options) {
    try {
        if (!config.oracle.enabled) {
            std::cerr << "verify: oracle.enabled must be true\n";
            return kExitValidation;
        }
        const ThermalBath bath = config.make_bath();
        if (!gate_or_report(config.params, bath)) return kExitValidation;

        const fock::TruncatedBasis basis = fock::build_basis(config.params, config.oracle.dim);
        const DiffusionCoefficients coeffs = thermal_coefficients(config.params, bath);

        fock::OracleConfig ocfg;
        ocfg.integrator = config.integrator;
        ocfg.sample_stride = config.sample_stride;
        ocfg.top_occupation_limit = config.oracle.top_occupation_limit;
        ocfg.eigenvalue_spot_checks = config.oracle.eigenvalue_spot_checks;

        const fock::ProjectedState initial =
            fock::project_initial_state(config.state, basis, config.oracle.projection_tail_limit);
        const fock::OracleRun run = fock::integrate_oracle(initial.rho, basis, coeffs, ocfg);

        const std::string dir = resolve_out_dir(config, options);
        CsvWriter csv(dir + "/verify.csv");
        write_csv_preamble(csv, options, "verify", config.output.format_version);
        csv.header({"t", "sigma_gaussian", "sigma_oracle", "abs_diff"});

        CsvWriter traj_csv(dir + "/oracle_trajectory.csv");
        write_csv_preamble(traj_csv, options, "trajectory", config.output.format_version);
        traj_csv.header(kTrajectoryColumns);

        double max_diff = 0.0;
        double max_trace_drift = 0.0;
        for (const fock::OracleSample& s : run.samples) {
            const double sigma_oracle = s.var_q * s.var_p - s.cov_qp * s.cov_qp;
            const double sigma_gauss = sigma_closed_form(config.state, config.params, bath, s.t);
            const double diff = std::abs(sigma_gauss - sigma_oracle);
            max_diff = std::max(max_diff, diff);
            max_trace_drift = std::max(max_trace_drift, s.trace_deviation);
            csv.numeric_row({s.t, sigma_gauss, sigma_oracle, diff});
            traj_csv.numeric_row({s.t, s.mean_q, s.mean_p, s.var_q, s.var_p, s.cov_qp, sigma_oracle,
                                  sigma_gauss, 0.5 * config.params.hbar / std::sqrt(sigma_oracle)});
        }

        double min_eig = 0.0;
        for (const auto& [t, eig] : run.min_eigenvalues) min_eig = std::min(min_eig, eig);

        std::cout << "verify: max |sigma_gaussian - sigma_oracle| = " << format_short(max_diff)
                  << " (bound " << format_short(config.oracle.sigma_tolerance) << "), max trace drift = "
                  << format_short(max_trace_drift) << ", min eigenvalue = " << format_short(min_eig)
                  << "\n";
        return max_diff <= config.oracle.sigma_tolerance ? kExitOk : kExitMismatch;
    } catch (const fock::TruncationBreach& ex) {
        std::cerr << "verify: " << ex.what() << "\n";
        return kExitBreach;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "verify: " << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << "verify: " << ex.what() << "\n";
        return kExitIo;
    }
}

}  // namespace lindosc::cli
