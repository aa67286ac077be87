#pragma once

// Decoherence metrics and timescales: the degree of decoherence delta_QD(t),
// its asymptotics, decoherence and relaxation times, off-diagonal decay and
// the quantum/thermal fluctuation-regime classification.

#include <vector>

#include "lindosc/evolution.hpp"
#include "lindosc/model.hpp"

namespace lindosc {

enum class FluctuationRegime { quantum_dominated, crossover, thermal_dominated };

const char* to_string(FluctuationRegime regime);

/// Reference values of the generalized uncertainty in the three regimes:
/// sigma0 (pure quantum), sigma_be (equilibrium at temperature T) and
/// sigma_mb (classical high-T limit; 0 at T = 0).
struct FluctuationScales {
    double sigma0 = 0.0;
    double sigma_be = 0.0;
    double sigma_mb = 0.0;
};

struct DecoherenceReport {
    std::vector<double> times;
    std::vector<double> delta_qd_t;
    double delta_qd_inf = 1.0;
    double t_deco = 0.0;
    double t_rel = 0.0;
    FluctuationRegime regime = FluctuationRegime::quantum_dominated;
    double sigma_floor = 0.0;  ///< hbar^2/4
    double sigma_be = 0.0;
    double sigma_mb = 0.0;
};

/// Degree of decoherence hbar/(2 sqrt(sigma)): 1 for a minimum-uncertainty
/// state, -> 0 as coherence is lost. Throws on sigma <= 0.
double delta_qd(const GaussianState& state, double hbar);

/// Long-time limit tanh(eps) = 1/coth(eps); equals 1 at T = 0.
double delta_qd_infinity(const ThermalBath& bath);

/// Time scale hbar^2 / (d_pp * separation^2) on which coherences between
/// wave-packet pieces a distance `separation` apart decay.
/// Throws on separation = 0 or d_pp <= 0.
double decoherence_time(const DiffusionCoefficients& coeffs, double separation, double hbar);

/// Thermal-bath decoherence time with the separation taken at the initial
/// coordinate spread: 2 hbar / ((lambda+mu) m omega var_q(0) coth(eps)).
double decoherence_time_thermal(const OscillatorParams& params, const ThermalBath& bath,
                                const InitialStateSpec& spec);

/// Relaxation (dissipation) time 1/lambda.
double relaxation_time(const OscillatorParams& params);

/// Off-diagonal suppression factor exp(-d_pp separation^2 t / hbar^2);
/// diagonal elements (separation = 0) are untouched for all t.
double offdiagonal_decay_factor(const DiffusionCoefficients& coeffs, double separation, double t,
                                double hbar);

FluctuationScales fluctuation_scales(const OscillatorParams& params, const ThermalBath& bath);

/// Classifies where the equilibrium fluctuations sit between the pure-quantum
/// and classical limits. `sigma_observed` must satisfy the uncertainty floor;
/// the label itself is a property of oscillator and bath alone.
FluctuationRegime classify_fluctuation_regime(const OscillatorParams& params,
                                              const ThermalBath& bath, double sigma_observed);

/// Aggregates the full metric set for a finished trajectory.
DecoherenceReport build_report(const OscillatorParams& params, const ThermalBath& bath,
                               const InitialStateSpec& spec, const Trajectory& trajectory);

}  // namespace lindosc
