#include "lindosc/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lindosc {

namespace {

constexpr double kRelSlack = 1e-12;

// Inclusive comparison lhs >= rhs with relative slack, so that exact boundary
// values do not fail on rounding.
bool ge_with_slack(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return lhs >= rhs - kRelSlack * scale;
}

}  // namespace

double OscillatorParams::effective_omega() const {
    const double w2 = effective_omega_sq();
    if (w2 <= 0.0)
        throw std::domain_error("effective_omega: omega^2 - mu^2 must be positive");
    return std::sqrt(w2);
}

void OscillatorParams::require_basic() const {
    if (!(m > 0.0)) throw std::invalid_argument("OscillatorParams: m must be > 0");
    if (!(omega > 0.0)) throw std::invalid_argument("OscillatorParams: omega must be > 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("OscillatorParams: hbar must be > 0");
}

ThermalBath ThermalBath::from_coth(double coth_eps) {
    if (!(coth_eps >= 1.0))
        throw std::invalid_argument("ThermalBath: coth(eps) must be >= 1");
    return ThermalBath(coth_eps, Mode::by_coth);
}

ThermalBath ThermalBath::from_temperature(double temperature, const OscillatorParams& params,
                                          double boltzmann_k) {
    params.require_basic();
    if (!(boltzmann_k > 0.0))
        throw std::invalid_argument("ThermalBath: Boltzmann constant must be > 0");
    if (temperature < 0.0)
        throw std::invalid_argument("ThermalBath: temperature must be >= 0");
    if (temperature == 0.0)
        return ThermalBath(1.0, Mode::by_temperature);
    const double eps = params.hbar * params.omega / (2.0 * boltzmann_k * temperature);
    return ThermalBath(1.0 / std::tanh(eps), Mode::by_temperature);
}

double ThermalBath::epsilon() const {
    if (coth_eps_ == 1.0) return std::numeric_limits<double>::infinity();
    // arccoth(c) = log((c+1)/(c-1)) / 2, written via log1p for accuracy near 1.
    return 0.5 * std::log1p(2.0 / (coth_eps_ - 1.0));
}

void InitialStateSpec::require_valid() const {
    if (!(delta > 0.0)) throw std::invalid_argument("InitialStateSpec: delta must be > 0");
    if (!(std::abs(r) < 1.0)) throw std::invalid_argument("InitialStateSpec: |r| must be < 1");
}

const ConstraintCheck* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

DiffusionCoefficients thermal_coefficients(const OscillatorParams& params, const ThermalBath& bath) {
    params.require_basic();
    if (!(params.lambda > std::abs(params.mu)))
        throw std::invalid_argument("thermal_coefficients: lambda > |mu| required for positive diffusion");
    const double c = bath.coth_eps();
    DiffusionCoefficients out;
    out.d_pp = 0.5 * (params.lambda + params.mu) * params.hbar * params.m * params.omega * c;
    out.d_qq = 0.5 * (params.lambda - params.mu) * params.hbar / (params.m * params.omega) * c;
    out.d_pq = 0.0;
    return out;
}

ValidationReport validate_constraints(const OscillatorParams& params, const ThermalBath& bath) {
    const double lam = params.lambda;
    const double mu = params.mu;
    const double c = bath.coth_eps();
    const double h = params.hbar;

    ValidationReport rep;
    rep.checks.push_back({"lambda > mu", lam, mu, true, lam > mu});
    rep.checks.push_back({"lambda > -mu", lam, -mu, true, lam > -mu});
    rep.checks.push_back({"omega > |mu|", params.omega, std::abs(mu), true, params.omega > std::abs(mu)});

    const double lhs_gibbs = (lam * lam - mu * mu) * c * c;
    const double rhs_gibbs = lam * lam;
    rep.checks.push_back({"(lambda^2 - mu^2) coth^2(eps) >= lambda^2", lhs_gibbs, rhs_gibbs, false,
                          ge_with_slack(lhs_gibbs, rhs_gibbs)});

    // Fundamental constraint evaluated on the raw thermal coefficient values;
    // with d_pq = 0 this is algebraically the same inequality as above.
    const double d_pp = 0.5 * (lam + mu) * h * params.m * params.omega * c;
    const double d_qq = 0.5 * (lam - mu) * h / (params.m * params.omega) * c;
    const double lhs_fund = d_pp * d_qq;
    const double rhs_fund = 0.25 * lam * lam * h * h;
    rep.checks.push_back({"D_pp D_qq - D_pq^2 >= lambda^2 hbar^2 / 4", lhs_fund, rhs_fund, false,
                          ge_with_slack(lhs_fund, rhs_fund)});

    rep.passed = true;
    for (const auto& chk : rep.checks) rep.passed = rep.passed && chk.passed;
    return rep;
}

GaussianState initial_covariance(const InitialStateSpec& spec, const OscillatorParams& params) {
    params.require_basic();
    spec.require_valid();
    const double one_minus_r2 = 1.0 - spec.r * spec.r;
    GaussianState s;
    s.t = 0.0;
    s.mean_q = spec.q0;
    s.mean_p = spec.p0;
    s.var_q = params.hbar * spec.delta / (2.0 * params.m * params.omega);
    s.var_p = params.hbar * params.m * params.omega / (2.0 * spec.delta * one_minus_r2);
    s.cov_qp = params.hbar * spec.r / (2.0 * std::sqrt(one_minus_r2));
    return s;
}

double generalized_uncertainty(const GaussianState& state) {
    return state.var_q * state.var_p - state.cov_qp * state.cov_qp;
}

}  // namespace lindosc
