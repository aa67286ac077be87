#pragma once

// Brute-force verification engine: the full master equation integrated in a
// truncated number basis, with moments extracted by traces. Everything here
// exists to cross-check the Gaussian closed forms through an independent
// route, so it favors directness over speed and aborts loudly when the
// truncation stops being trustworthy.

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "lindosc/evolution.hpp"
#include "lindosc/model.hpp"

namespace lindosc::fock {

/// Thrown when probability leaks into the top of the truncated basis beyond
/// the configured limit; results past this point would be silently wrong.
class TruncationBreach : public std::runtime_error {
public:
    TruncationBreach(double time, double occupation, double limit);
    double time() const { return time_; }
    double occupation() const { return occupation_; }

private:
    double time_;
    double occupation_;
};

/// Dense position, momentum and free-Hamiltonian matrices on the lowest N
/// number states. The canonical commutator holds exactly away from the
/// truncation boundary.
struct TruncatedBasis {
    int dim = 0;
    Eigen::MatrixXcd q_op;
    Eigen::MatrixXcd p_op;
    Eigen::MatrixXcd h0_op;
    OscillatorParams params;
};

struct FockDensityMatrix {
    int dim = 0;
    Eigen::MatrixXcd values;
    double t = 0.0;

    double trace_real() const { return values.trace().real(); }
    /// Combined population of the two highest basis states.
    double top_occupation() const;
};

/// Projection of the correlated coherent state onto the number basis.
struct ProjectedState {
    FockDensityMatrix rho;
    Eigen::VectorXcd coeffs;
    double norm_deviation = 0.0;   ///< |1 - c^dagger c| before renormalization
    double top_occupation = 0.0;   ///< relative population of the top two levels
};

/// Gaussian moments extracted from a density matrix by traces.
struct OracleSample {
    double t = 0.0;
    double mean_q = 0.0;
    double mean_p = 0.0;
    double var_q = 0.0;
    double var_p = 0.0;
    double cov_qp = 0.0;
    double trace_deviation = 0.0;   ///< |Tr rho - 1|
    double top_occupation = 0.0;
};

struct OracleRun {
    std::vector<OracleSample> samples;
    std::vector<std::pair<double, double>> min_eigenvalues;  ///< (t, smallest eigenvalue)
    FockDensityMatrix final_rho;
};

struct OracleConfig {
    IntegratorConfig integrator;
    long long sample_stride = 10;
    double top_occupation_limit = 1e-6;
    int eigenvalue_spot_checks = 5;
};

/// Ladder-operator construction: q = sqrt(hbar/2 m omega)(a + a^dagger),
/// p = i sqrt(hbar m omega/2)(a^dagger - a), h0 = p^2/2m + m omega^2 q^2/2.
/// Requires dim >= 4.
TruncatedBasis build_basis(const OscillatorParams& params, int dim);

/// The master equation, term by term:
///   -(i/hbar)[h0, rho]
///   -(i/2hbar)(lambda+mu)[q, rho p + p rho] + (i/2hbar)(lambda-mu)[p, rho q + q rho]
///   -(d_pp/hbar^2)[q,[q,rho]] - (d_qq/hbar^2)[p,[p,rho]]
///   +(d_pq/hbar^2)([q,[p,rho]] + [p,[q,rho]])
Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const TruncatedBasis& basis,
                              const DiffusionCoefficients& coeffs);

/// Number-basis projection of the initial wave packet by dense quadrature over
/// normalized Hermite functions. Throws TruncationBreach when the top two
/// levels hold more than tail_limit of the norm.
ProjectedState project_initial_state(const InitialStateSpec& spec, const TruncatedBasis& basis,
                                     double tail_limit = 1e-10);

OracleSample extract_moments(const FockDensityMatrix& rho, const TruncatedBasis& basis);

/// Fixed-step RK4 in matrix space. Monitors trace drift and boundary
/// occupation at every sample; throws TruncationBreach on a guard violation.
OracleRun integrate_oracle(const FockDensityMatrix& rho0, const TruncatedBasis& basis,
                           const DiffusionCoefficients& coeffs, const OracleConfig& cfg);

/// Thermal (geometric number distribution) state with the same moments as the
/// asymptotic Gaussian state; used for fixed-point checks.
FockDensityMatrix thermal_state(const TruncatedBasis& basis, const ThermalBath& bath);

}  // namespace lindosc::fock
