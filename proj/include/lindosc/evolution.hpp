#pragma once

// Time evolution of Gaussian-state moments: the closed-form generalized
// uncertainty sigma(t), the coupled first/second-moment ODEs, fixed-step RK4
// integration and the asymptotic (equilibrium) state.

#include <vector>

#include "lindosc/model.hpp"

namespace lindosc {

/// Fixed-step RK4 configuration. t_end/dt must be an integer within rounding.
struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 10.0;

    /// Number of steps; throws if t_end is not an integer multiple of dt.
    long long step_count() const;
};

/// Ordered Gaussian-moment samples of one integration run.
struct Trajectory {
    std::vector<GaussianState> samples;
    OscillatorParams params;
    ThermalBath bath = ThermalBath::from_coth(1.0);
};

/// Time derivatives of (mean_q, mean_p, var_q, var_p, cov_qp).
struct MomentRates {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
    double cov_qp = 0.0;
};

/// Closed-form generalized uncertainty sigma(t) for the thermal bath.
/// Precondition: the constraint gate passes (throws otherwise).
double sigma_closed_form(const InitialStateSpec& spec, const OscillatorParams& params,
                         const ThermalBath& bath, double t);

/// Right-hand side of the Gaussian moment equations derived from the master
/// equation:
///   d<q>/dt   = <p>/m - (lambda-mu) <q>
///   d<p>/dt   = -m omega^2 <q> - (lambda+mu) <p>
///   dvar_q/dt = -2(lambda-mu) var_q + (2/m) cov_qp + 2 d_qq
///   dvar_p/dt = -2(lambda+mu) var_p - 2 m omega^2 cov_qp + 2 d_pp
///   dcov_qp/dt= -2 lambda cov_qp + var_p/m - m omega^2 var_q + 2 d_pq
MomentRates moment_ode_rhs(const GaussianState& state, const OscillatorParams& params,
                           const DiffusionCoefficients& coeffs);

/// RK4 integration of the moment equations from an explicit initial state and
/// explicit coefficients; no constraint gating (used for closed-system and
/// test-mode runs). Samples every `sample_stride` steps plus the final step.
Trajectory integrate_moments(const GaussianState& initial, const OscillatorParams& params,
                             const DiffusionCoefficients& coeffs, const IntegratorConfig& cfg,
                             long long sample_stride = 1);

/// Full gated run: validates constraints, builds the thermal coefficients and
/// the minimum-uncertainty initial state, then integrates.
/// Throws on constraint failure and on dt violating the stability guard
/// dt * max(lambda + |mu|, omega) <= 0.1.
Trajectory integrate(const InitialStateSpec& spec, const OscillatorParams& params,
                     const ThermalBath& bath, const IntegratorConfig& cfg,
                     long long sample_stride = 1);

/// Equilibrium state: var_q = hbar coth(eps)/(2 m omega),
/// var_p = hbar m omega coth(eps)/2, cov_qp = 0, means 0, t = +infinity.
GaussianState asymptotic_state(const OscillatorParams& params, const ThermalBath& bath);

}  // namespace lindosc
