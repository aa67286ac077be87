#include "lindosc/decoherence.hpp"

#include <cmath>
#include <stdexcept>

namespace lindosc {

namespace {
// Relative threshold separating the regime labels; the underlying physics is
// a smooth crossover, a numeric boundary is needed for a stable label.
constexpr double kRegimeTheta = 0.05;
}  // namespace

const char* to_string(FluctuationRegime regime) {
    switch (regime) {
        case FluctuationRegime::quantum_dominated: return "quantum-dominated";
        case FluctuationRegime::crossover: return "crossover";
        case FluctuationRegime::thermal_dominated: return "thermal-dominated";
    }
    return "unknown";
}

double delta_qd(const GaussianState& state, double hbar) {
    const double sigma = generalized_uncertainty(state);
    if (!(sigma > 0.0)) throw std::invalid_argument("delta_qd: sigma must be positive");
    return 0.5 * hbar / std::sqrt(sigma);
}

double delta_qd_infinity(const ThermalBath& bath) {
    return bath.tanh_eps();
}

double decoherence_time(const DiffusionCoefficients& coeffs, double separation, double hbar) {
    if (!(coeffs.d_pp > 0.0)) throw std::invalid_argument("decoherence_time: d_pp must be > 0");
    if (separation == 0.0)
        throw std::invalid_argument("decoherence_time: zero separation has no decoherence scale");
    return hbar * hbar / (coeffs.d_pp * separation * separation);
}

double decoherence_time_thermal(const OscillatorParams& params, const ThermalBath& bath,
                                const InitialStateSpec& spec) {
    const GaussianState init = initial_covariance(spec, params);
    return 2.0 * params.hbar /
           ((params.lambda + params.mu) * params.m * params.omega * init.var_q * bath.coth_eps());
}

double relaxation_time(const OscillatorParams& params) {
    if (!(params.lambda > 0.0)) throw std::invalid_argument("relaxation_time: lambda must be > 0");
    return 1.0 / params.lambda;
}

double offdiagonal_decay_factor(const DiffusionCoefficients& coeffs, double separation, double t,
                                double hbar) {
    if (t < 0.0) throw std::invalid_argument("offdiagonal_decay_factor: t must be >= 0");
    return std::exp(-coeffs.d_pp * separation * separation * t / (hbar * hbar));
}

FluctuationScales fluctuation_scales(const OscillatorParams& params, const ThermalBath& bath) {
    const double c = bath.coth_eps();
    const double h = params.hbar;
    FluctuationScales s;
    s.sigma0 = 0.25 * h * h;
    s.sigma_be = 0.25 * h * h * c * c;
    // (kT/omega)^2 with kT recovered from eps = hbar*omega/(2kT); the Boltzmann
    // convention cancels. Zero at T = 0 (eps = infinity).
    const double eps = bath.epsilon();
    s.sigma_mb = std::isinf(eps) ? 0.0 : 0.25 * h * h / (eps * eps);
    return s;
}

FluctuationRegime classify_fluctuation_regime(const OscillatorParams& params,
                                              const ThermalBath& bath, double sigma_observed) {
    const FluctuationScales s = fluctuation_scales(params, bath);
    if (!(sigma_observed >= s.sigma0 * (1.0 - 1e-9)))
        throw std::invalid_argument("classify_fluctuation_regime: sigma below the uncertainty floor");
    if (s.sigma_be / s.sigma0 < 1.0 + kRegimeTheta) return FluctuationRegime::quantum_dominated;
    if (std::abs(s.sigma_be - s.sigma_mb) <= kRegimeTheta * s.sigma_be)
        return FluctuationRegime::thermal_dominated;
    return FluctuationRegime::crossover;
}

DecoherenceReport build_report(const OscillatorParams& params, const ThermalBath& bath,
                               const InitialStateSpec& spec, const Trajectory& trajectory) {
    DecoherenceReport rep;
    rep.times.reserve(trajectory.samples.size());
    rep.delta_qd_t.reserve(trajectory.samples.size());
    for (const GaussianState& s : trajectory.samples) {
        rep.times.push_back(s.t);
        rep.delta_qd_t.push_back(delta_qd(s, params.hbar));
    }
    rep.delta_qd_inf = delta_qd_infinity(bath);
    rep.t_deco = decoherence_time_thermal(params, bath, spec);
    rep.t_rel = relaxation_time(params);

    const FluctuationScales scales = fluctuation_scales(params, bath);
    rep.sigma_floor = scales.sigma0;
    rep.sigma_be = scales.sigma_be;
    rep.sigma_mb = scales.sigma_mb;

    const double sigma_last = trajectory.samples.empty()
                                  ? scales.sigma_be
                                  : generalized_uncertainty(trajectory.samples.back());
    rep.regime = classify_fluctuation_regime(params, bath, sigma_last);
    return rep;
}

}  // namespace lindosc
