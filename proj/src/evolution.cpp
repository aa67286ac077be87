#include "lindosc/evolution.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lindosc {

namespace {

void require_gate(const OscillatorParams& params, const ThermalBath& bath, const char* who) {
    params.require_basic();
    const ValidationReport rep = validate_constraints(params, bath);
    if (!rep.passed) {
        const ConstraintCheck* f = rep.first_failure();
        throw std::invalid_argument(std::string(who) + ": constraint check failed: " + f->name);
    }
}

using MomentVec = std::array<double, 5>;  // mean_q, mean_p, var_q, var_p, cov_qp

MomentVec to_vec(const GaussianState& s) {
    return {s.mean_q, s.mean_p, s.var_q, s.var_p, s.cov_qp};
}

GaussianState to_state(const MomentVec& v, double t) {
    return {t, v[0], v[1], v[2], v[3], v[4]};
}

MomentVec rhs(const MomentVec& y, const OscillatorParams& p, const DiffusionCoefficients& d) {
    const double lm = p.lambda - p.mu;
    const double lp = p.lambda + p.mu;
    const double mw2 = p.m * p.omega * p.omega;
    return {
        y[1] / p.m - lm * y[0],
        -mw2 * y[0] - lp * y[1],
        -2.0 * lm * y[2] + (2.0 / p.m) * y[4] + 2.0 * d.d_qq,
        -2.0 * lp * y[3] - 2.0 * mw2 * y[4] + 2.0 * d.d_pp,
        -2.0 * p.lambda * y[4] + y[3] / p.m - mw2 * y[2] + 2.0 * d.d_pq,
    };
}

MomentVec axpy(const MomentVec& y, double h, const MomentVec& k) {
    MomentVec out;
    for (int i = 0; i < 5; ++i) out[i] = y[i] + h * k[i];
    return out;
}

MomentVec rk4_step(const MomentVec& y, double h, const OscillatorParams& p,
                   const DiffusionCoefficients& d) {
    const MomentVec k1 = rhs(y, p, d);
    const MomentVec k2 = rhs(axpy(y, 0.5 * h, k1), p, d);
    const MomentVec k3 = rhs(axpy(y, 0.5 * h, k2), p, d);
    const MomentVec k4 = rhs(axpy(y, h, k3), p, d);
    MomentVec out;
    for (int i = 0; i < 5; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace

long long IntegratorConfig::step_count() const {
    if (!(dt > 0.0)) throw std::invalid_argument("IntegratorConfig: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("IntegratorConfig: t_end must be > 0");
    const long long n = std::llround(t_end / dt);
    if (n < 1 || std::abs(static_cast<double>(n) * dt - t_end) > 1e-9 * t_end)
        throw std::invalid_argument("IntegratorConfig: t_end must be an integer multiple of dt");
    return n;
}

double sigma_closed_form(const InitialStateSpec& spec, const OscillatorParams& params,
                         const ThermalBath& bath, double t) {
    spec.require_valid();
    require_gate(params, bath, "sigma_closed_form");
    if (params.effective_omega_sq() <= 0.0)
        throw std::domain_error("sigma_closed_form: omega^2 - mu^2 must be positive");

    // The braces cancel to 1 exactly at t = 0 but through terms of size
    // ~coth(eps) * (delta + 1/(delta(1-r^2))); long double keeps the
    // cancellation error well under 1e-12 relative even for extreme squeezing.
    const long double c = bath.coth_eps();
    const long double delta = spec.delta;
    const long double inv = 1.0L / (delta * (1.0L - static_cast<long double>(spec.r) * spec.r));
    const long double u = delta + inv;
    const long double mu = params.mu;
    const long double om = params.omega;
    const long double om_eff2 = om * om - mu * mu;
    const long double om_eff = std::sqrt(om_eff2);
    const long double lt = t;

    const long double e4 = std::exp(-4.0L * params.lambda * lt);
    const long double e2 = std::exp(-2.0L * params.lambda * lt);
    const long double cos2 = std::cos(2.0L * om_eff * lt);
    const long double sin2 = std::sin(2.0L * om_eff * lt);
    const long double root = std::sqrt(1.0L - static_cast<long double>(spec.r) * spec.r);

    const long double bracket = (u - 2.0L * c) * (om * om - mu * mu * cos2) / om_eff2
                              + (delta - inv) * mu * sin2 / om_eff
                              + 2.0L * spec.r * mu * om * (1.0L - cos2) / (om_eff2 * root);

    const long double braces = e4 * (1.0L - u * c + c * c) + e2 * c * bracket + c * c;
    const long double h2_4 = 0.25L * static_cast<long double>(params.hbar) * params.hbar;
    return static_cast<double>(h2_4 * braces);
}

MomentRates moment_ode_rhs(const GaussianState& state, const OscillatorParams& params,
                           const DiffusionCoefficients& coeffs) {
    const MomentVec d = rhs(to_vec(state), params, coeffs);
    return {d[0], d[1], d[2], d[3], d[4]};
}

Trajectory integrate_moments(const GaussianState& initial, const OscillatorParams& params,
                             const DiffusionCoefficients& coeffs, const IntegratorConfig& cfg,
                             long long sample_stride) {
    if (sample_stride < 1) throw std::invalid_argument("integrate_moments: sample_stride must be >= 1");
    const long long n = cfg.step_count();

    Trajectory traj;
    traj.params = params;
    traj.samples.reserve(static_cast<size_t>(n / sample_stride) + 2);

    MomentVec y = to_vec(initial);
    traj.samples.push_back(to_state(y, 0.0));
    for (long long step = 1; step <= n; ++step) {
        y = rk4_step(y, cfg.dt, params, coeffs);
        if (step % sample_stride == 0 || step == n)
            traj.samples.push_back(to_state(y, static_cast<double>(step) * cfg.dt));
    }
    return traj;
}

Trajectory integrate(const InitialStateSpec& spec, const OscillatorParams& params,
                     const ThermalBath& bath, const IntegratorConfig& cfg,
                     long long sample_stride) {
    require_gate(params, bath, "integrate");
    const double max_rate = std::max(params.lambda + std::abs(params.mu), params.omega);
    if (cfg.dt * max_rate > 0.1)
        throw std::invalid_argument("integrate: dt too large for the fastest rate (dt * rate > 0.1)");

    Trajectory traj = integrate_moments(initial_covariance(spec, params),
                                        params, thermal_coefficients(params, bath),
                                        cfg, sample_stride);
    traj.bath = bath;
    return traj;
}

GaussianState asymptotic_state(const OscillatorParams& params, const ThermalBath& bath) {
    require_gate(params, bath, "asymptotic_state");
    const double c = bath.coth_eps();
    GaussianState s;
    s.t = std::numeric_limits<double>::infinity();
    s.var_q = 0.5 * params.hbar * c / (params.m * params.omega);
    s.var_p = 0.5 * params.hbar * params.m * params.omega * c;
    s.cov_qp = 0.0;
    return s;
}

}  // namespace lindosc
