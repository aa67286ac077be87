#pragma once

// Coordinate-representation density matrices of Gaussian states: the initial
// correlated-coherent-state wave function, the general Gaussian solution, its
// Sigma/Delta form, the thermal steady state, and grid evaluation with the
// width-fit extraction of the decoherence degree.

#include <complex>

#include <Eigen/Dense>

#include "lindosc/model.hpp"

namespace lindosc {

/// Uniform n x n evaluation grid over (q, q').
struct CoordinateGrid {
    double q_min = -5.0;
    double q_max = 5.0;
    int n = 101;

    double step() const { return (q_max - q_min) / (n - 1); }
    double point(int i) const { return q_min + step() * i; }
    void require_valid() const;  ///< throws unless q_min < q_max and n >= 2
};

/// rho(q_i, q'_j) sampled on a grid; Hermitian with a real nonnegative
/// diagonal by construction.
struct DensityMatrixGrid {
    CoordinateGrid grid;
    Eigen::MatrixXcd values;
    double t = 0.0;
};

/// Coefficients of the Sigma = (q+q')/2, Delta = q-q' form:
/// alpha = 1/(2 var_q), gamma = sigma/(2 hbar^2 var_q), beta = cov_qp/(hbar var_q).
struct SigmaDeltaCoefficients {
    double alpha = 0.0;
    double gamma = 0.0;
    double beta = 0.0;
};

/// Gaussian widths recovered from a sampled grid by log-domain least squares;
/// the ratio reproduces delta_QD independently of the moment route.
struct GaussianWidthFit {
    double alpha = 0.0;    ///< diagonal curvature
    double gamma = 0.0;    ///< off-diagonal (Delta) curvature
    double delta_qd = 0.0; ///< 0.5 * sqrt(alpha/gamma)
};

/// Correlated coherent state wave function at position q, normalized so that
/// the squared modulus integrates to one.
std::complex<double> initial_wavefunction(const InitialStateSpec& spec,
                                          const OscillatorParams& params, double q);

SigmaDeltaCoefficients sigma_delta_coefficients(const GaussianState& state, double hbar);

/// Gaussian density matrix element rho(q, q') of a state with the given
/// moments.
std::complex<double> evaluate_rho_point(const GaussianState& state, double q, double q_prime,
                                        double hbar);

/// Same matrix element through the Sigma/Delta parameterization; agrees with
/// evaluate_rho_point at (Sigma + Delta/2, Sigma - Delta/2) identically.
std::complex<double> evaluate_rho_sigma_delta(const GaussianState& state, double sigma_var,
                                              double delta_var, double hbar);

DensityMatrixGrid evaluate_rho(const GaussianState& state, const CoordinateGrid& grid, double hbar);

/// Thermal equilibrium density matrix
/// (m omega / (pi hbar coth eps))^{1/2}
///   * exp{-(m omega/4 hbar)[(q+q')^2/coth eps + (q-q')^2 coth eps]}.
DensityMatrixGrid steady_state_rho(const OscillatorParams& params, const ThermalBath& bath,
                                   const CoordinateGrid& grid);

/// Grid covering mean_q +- span standard deviations of the diagonal Gaussian.
CoordinateGrid auto_grid(const GaussianState& state, int n = 101, double span = 6.0);

/// Trapezoidal quadrature of the diagonal; 1 within 1e-6 when the grid spans
/// at least eight standard deviations.
double trace_quadrature(const DensityMatrixGrid& rho);

/// Log-domain quadratic fits along the main diagonal (Sigma direction) and the
/// anti-diagonal (Delta direction), using only samples with |rho| > 1e-12.
GaussianWidthFit fit_gaussian_widths(const DensityMatrixGrid& rho);

}  // namespace lindosc
