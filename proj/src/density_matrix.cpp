#include "lindosc/density_matrix.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lindosc {

namespace {

constexpr double kFitMagnitudeFloor = 1e-12;

// Least-squares quadratic y = c0 + c1 x + c2 x^2; returns c2.
// The x values are centered first to keep the normal equations well scaled.
double quadratic_curvature(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 3) throw std::runtime_error("width fit: fewer than 3 usable samples");
    double xbar = 0.0;
    for (double x : xs) xbar += x;
    xbar /= static_cast<double>(n);

    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double b0 = 0, b1 = 0, b2 = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = xs[i] - xbar;
        const double x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        b0 += ys[i];
        b1 += ys[i] * x;
        b2 += ys[i] * x2;
    }
    const double s0 = static_cast<double>(n);
    // Solve the 3x3 normal system [s0 s1 s2; s1 s2 s3; s2 s3 s4] c = b.
    Eigen::Matrix3d a;
    a << s0, s1, s2, s1, s2, s3, s2, s3, s4;
    Eigen::Vector3d b(b0, b1, b2);
    return a.fullPivLu().solve(b)(2);
}

}  // namespace

void CoordinateGrid::require_valid() const {
    if (!(q_min < q_max)) throw std::invalid_argument("CoordinateGrid: q_min must be < q_max");
    if (n < 2) throw std::invalid_argument("CoordinateGrid: n must be >= 2");
}

std::complex<double> initial_wavefunction(const InitialStateSpec& spec,
                                          const OscillatorParams& params, double q) {
    const GaussianState s = initial_covariance(spec, params);
    const double h = params.hbar;
    const double dq = q - s.mean_q;
    const std::complex<double> width_factor(1.0, -2.0 * s.cov_qp / h);
    const std::complex<double> exponent =
        -width_factor * (dq * dq) / (4.0 * s.var_q) + std::complex<double>(0.0, s.mean_p * q / h);
    const double prefactor = std::pow(2.0 * std::numbers::pi * s.var_q, -0.25);
    return prefactor * std::exp(exponent);
}

SigmaDeltaCoefficients sigma_delta_coefficients(const GaussianState& state, double hbar) {
    const double sigma = generalized_uncertainty(state);
    SigmaDeltaCoefficients c;
    c.alpha = 1.0 / (2.0 * state.var_q);
    c.gamma = sigma / (2.0 * hbar * hbar * state.var_q);
    c.beta = state.cov_qp / (hbar * state.var_q);
    return c;
}

std::complex<double> evaluate_rho_point(const GaussianState& state, double q, double q_prime,
                                        double hbar) {
    const double sigma = generalized_uncertainty(state);
    const double centered = 0.5 * (q + q_prime) - state.mean_q;
    const double separation = q - q_prime;
    const double real_part = -centered * centered / (2.0 * state.var_q)
                           - sigma * separation * separation / (2.0 * hbar * hbar * state.var_q);
    const double imag_part = state.cov_qp * centered * separation / (hbar * state.var_q)
                           + state.mean_p * separation / hbar;
    const double prefactor = 1.0 / std::sqrt(2.0 * std::numbers::pi * state.var_q);
    return prefactor * std::exp(std::complex<double>(real_part, imag_part));
}

std::complex<double> evaluate_rho_sigma_delta(const GaussianState& state, double sigma_var,
                                              double delta_var, double hbar) {
    const SigmaDeltaCoefficients c = sigma_delta_coefficients(state, hbar);
    const double real_part = -c.alpha * sigma_var * sigma_var - c.gamma * delta_var * delta_var
                           + 2.0 * c.alpha * state.mean_q * sigma_var
                           - c.alpha * state.mean_q * state.mean_q;
    const double imag_part = c.beta * sigma_var * delta_var
                           + (state.mean_p / hbar - c.beta * state.mean_q) * delta_var;
    const double prefactor = std::sqrt(c.alpha / std::numbers::pi);
    return prefactor * std::exp(std::complex<double>(real_part, imag_part));
}

DensityMatrixGrid evaluate_rho(const GaussianState& state, const CoordinateGrid& grid, double hbar) {
    grid.require_valid();
    if (!(state.var_q > 0.0) || !(state.var_p > 0.0))
        throw std::invalid_argument("evaluate_rho: variances must be positive");
    DensityMatrixGrid out;
    out.grid = grid;
    out.t = state.t;
    out.values.resize(grid.n, grid.n);
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            out.values(i, j) = evaluate_rho_point(state, grid.point(i), grid.point(j), hbar);
    return out;
}

DensityMatrixGrid steady_state_rho(const OscillatorParams& params, const ThermalBath& bath,
                                   const CoordinateGrid& grid) {
    grid.require_valid();
    params.require_basic();
    const double c = bath.coth_eps();
    const double mw = params.m * params.omega;
    const double h = params.hbar;
    const double prefactor = std::sqrt(mw / (std::numbers::pi * h * c));
    DensityMatrixGrid out;
    out.grid = grid;
    out.t = std::numeric_limits<double>::infinity();
    out.values.resize(grid.n, grid.n);
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            const double sum = grid.point(i) + grid.point(j);
            const double diff = grid.point(i) - grid.point(j);
            out.values(i, j) = prefactor * std::exp(-mw / (4.0 * h) * (sum * sum / c + diff * diff * c));
        }
    }
    return out;
}

CoordinateGrid auto_grid(const GaussianState& state, int n, double span) {
    const double width = span * std::sqrt(state.var_q);
    return {state.mean_q - width, state.mean_q + width, n};
}

double trace_quadrature(const DensityMatrixGrid& rho) {
    const int n = rho.grid.n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rho.values(i, i).real();
    sum -= 0.5 * (rho.values(0, 0).real() + rho.values(n - 1, n - 1).real());
    return sum * rho.grid.step();
}

GaussianWidthFit fit_gaussian_widths(const DensityMatrixGrid& rho) {
    const int n = rho.grid.n;

    // Main diagonal: Delta = 0, Sigma = q_i. ln|rho| is quadratic in Sigma
    // with curvature -alpha.
    std::vector<double> xs, ys;
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(rho.values(i, i));
        if (mag > kFitMagnitudeFloor) {
            xs.push_back(rho.grid.point(i));
            ys.push_back(std::log(mag));
        }
    }
    const double alpha = -quadratic_curvature(xs, ys);

    // Anti-diagonal: Sigma fixed at the grid center, Delta = q_i - q_{n-1-i}.
    // ln|rho| is quadratic in Delta with curvature -gamma.
    xs.clear();
    ys.clear();
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(rho.values(i, n - 1 - i));
        if (mag > kFitMagnitudeFloor) {
            xs.push_back(rho.grid.point(i) - rho.grid.point(n - 1 - i));
            ys.push_back(std::log(mag));
        }
    }
    const double gamma = -quadratic_curvature(xs, ys);

    GaussianWidthFit fit;
    fit.alpha = alpha;
    fit.gamma = gamma;
    fit.delta_qd = 0.5 * std::sqrt(alpha / gamma);
    return fit;
}

}  // namespace lindosc
