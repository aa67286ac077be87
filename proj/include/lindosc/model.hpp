#pragma once

// Physical parameters, thermal-bath coefficients, constraint validation and
// initial-state construction for a damped harmonic oscillator coupled to a
// thermal reservoir.

#include <string>
#include <vector>

namespace lindosc {

/// Parameters of the open oscillator. Natural units (hbar = m = omega = 1)
/// by default; every field can be overridden.
struct OscillatorParams {
    double m = 1.0;       ///< mass
    double omega = 1.0;   ///< angular frequency, > 0
    double lambda = 0.0;  ///< friction (dissipation) constant
    double mu = 0.0;      ///< Hamiltonian coupling of the qp+pq term
    double hbar = 1.0;

    /// omega^2 - mu^2; must be positive in the underdamped regime.
    double effective_omega_sq() const { return omega * omega - mu * mu; }
    /// Shifted oscillation frequency sqrt(omega^2 - mu^2).
    double effective_omega() const;

    /// Throws std::invalid_argument unless m, omega, hbar are all positive.
    void require_basic() const;
};

/// Thermal reservoir. Canonical internal representation is coth(eps) with
/// eps = hbar*omega / (2 k T); coth(eps) = 1 represents T = 0 exactly.
class ThermalBath {
public:
    enum class Mode { by_temperature, by_coth };

    static ThermalBath from_coth(double coth_eps);
    /// T = 0 is accepted and maps to coth(eps) = 1.
    static ThermalBath from_temperature(double temperature, const OscillatorParams& params,
                                        double boltzmann_k = 1.0);

    double coth_eps() const { return coth_eps_; }
    double tanh_eps() const { return 1.0 / coth_eps_; }
    /// eps = arccoth(coth eps); +infinity at T = 0.
    double epsilon() const;
    Mode mode() const { return mode_; }

private:
    ThermalBath(double coth_eps, Mode mode) : coth_eps_(coth_eps), mode_(mode) {}
    double coth_eps_;
    Mode mode_;
};

/// Environment-induced noise strengths of the master equation.
/// Thermal (Gibbs-asymptote) coefficients have d_pq = 0.
struct DiffusionCoefficients {
    double d_pp = 0.0;
    double d_qq = 0.0;
    double d_pq = 0.0;
};

/// Correlated coherent state parameters: squeezing delta > 0, position-momentum
/// correlation |r| < 1, and initial centroids.
struct InitialStateSpec {
    double delta = 1.0;
    double r = 0.0;
    double q0 = 0.0;
    double p0 = 0.0;

    void require_valid() const;  ///< throws on delta <= 0 or |r| >= 1
};

/// First and second central moments of a Gaussian state at time t.
/// t = +infinity marks the asymptotic state.
struct GaussianState {
    double t = 0.0;
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
    double cov_qp = 0.0;
};

/// One inequality of the constraint gate, with the two compared values kept
/// for reporting.
struct ConstraintCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool strict = false;  ///< strict '>' vs inclusive '>='
    bool passed = false;
};

/// Outcome of the constraint gate. Failures are reported, never thrown.
struct ValidationReport {
    std::vector<ConstraintCheck> checks;
    bool passed = false;

    const ConstraintCheck* first_failure() const;
};

/// Diffusion coefficients driving the state to the Gibbs equilibrium:
/// d_pp = (lambda+mu)/2 * hbar m omega coth(eps),
/// d_qq = (lambda-mu)/2 * hbar/(m omega) * coth(eps), d_pq = 0.
/// Throws unless lambda > |mu| (positivity of both coefficients).
DiffusionCoefficients thermal_coefficients(const OscillatorParams& params, const ThermalBath& bath);

/// The gatekeeper: evaluates every constraint the thermal model must satisfy
/// and reports each one individually. Inclusive comparisons carry a relative
/// slack of 1e-12 so boundary equality passes.
ValidationReport validate_constraints(const OscillatorParams& params, const ThermalBath& bath);

/// Minimum-uncertainty covariances of the correlated coherent state:
/// var_q = hbar delta/(2 m omega), var_p = hbar m omega/(2 delta (1-r^2)),
/// cov_qp = hbar r/(2 sqrt(1-r^2)). Means are copied from the spec, t = 0.
GaussianState initial_covariance(const InitialStateSpec& spec, const OscillatorParams& params);

/// Generalized uncertainty sigma = var_q var_p - cov_qp^2, bounded below by
/// hbar^2/4 for physical states.
double generalized_uncertainty(const GaussianState& state);

}  // namespace lindosc
