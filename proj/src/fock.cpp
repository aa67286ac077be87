#include "lindosc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "lindosc/density_matrix.hpp"

namespace lindosc::fock {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

// q, p and h0 are banded in the number basis (bandwidths 1, 1 and 2), so all
// products in the superoperator are O(band * N^2) instead of O(N^3). The
// entries used are exactly those of the stored dense matrices.

// A * X with A banded.
MatrixXcd mul_banded_left(const MatrixXcd& a, const MatrixXcd& x, int band) {
    const int n = static_cast<int>(a.rows());
    MatrixXcd out(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            cplx acc(0.0, 0.0);
            const int k0 = std::max(0, i - band);
            const int k1 = std::min(n - 1, i + band);
            for (int k = k0; k <= k1; ++k) acc += a(i, k) * x(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

// X * A with A banded.
MatrixXcd mul_banded_right(const MatrixXcd& x, const MatrixXcd& a, int band) {
    const int n = static_cast<int>(a.rows());
    MatrixXcd out(n, n);
    for (int j = 0; j < n; ++j) {
        const int k0 = std::max(0, j - band);
        const int k1 = std::min(n - 1, j + band);
        for (int i = 0; i < n; ++i) {
            cplx acc(0.0, 0.0);
            for (int k = k0; k <= k1; ++k) acc += x(i, k) * a(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

// Tr(X * A) with A banded.
cplx trace_product_banded(const MatrixXcd& x, const MatrixXcd& a, int band) {
    const int n = static_cast<int>(a.rows());
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const int j0 = std::max(0, i - band);
        const int j1 = std::min(n - 1, i + band);
        for (int j = j0; j <= j1; ++j) acc += x(i, j) * a(j, i);
    }
    return acc;
}

// Normalized Hermite functions h_n(x) for n = 0..n_max, by stable upward
// recurrence: h_{n+1} = sqrt(2/(n+1)) x h_n - sqrt(n/(n+1)) h_{n-1}.
void hermite_functions(double x, int n_max, std::vector<double>& out) {
    out.resize(n_max + 1);
    out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max == 0) return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (int n = 1; n < n_max; ++n)
        out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] - std::sqrt(double(n) / (n + 1)) * out[n - 1];
}

}  // namespace

TruncationBreach::TruncationBreach(double time, double occupation, double limit)
    : std::runtime_error("truncation breach at t = " + std::to_string(time) + ": top-level occupation " +
                         std::to_string(occupation) + " exceeds " + std::to_string(limit)),
      time_(time),
      occupation_(occupation) {}

double FockDensityMatrix::top_occupation() const {
    return values(dim - 1, dim - 1).real() + values(dim - 2, dim - 2).real();
}

TruncatedBasis build_basis(const OscillatorParams& params, int dim) {
    params.require_basic();
    if (dim < 4) throw std::invalid_argument("build_basis: dim must be >= 4");

    MatrixXcd lower = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(double(n));
    const MatrixXcd raise = lower.adjoint();

    const double lq = std::sqrt(params.hbar / (2.0 * params.m * params.omega));
    const double lp = std::sqrt(params.hbar * params.m * params.omega / 2.0);

    TruncatedBasis basis;
    basis.dim = dim;
    basis.params = params;
    basis.q_op = lq * (lower + raise);
    basis.p_op = cplx(0.0, 1.0) * lp * (raise - lower);
    basis.h0_op = basis.p_op * basis.p_op / (2.0 * params.m)
                + 0.5 * params.m * params.omega * params.omega * basis.q_op * basis.q_op;
    return basis;
}

Eigen::MatrixXcd lindblad_rhs(const Eigen::MatrixXcd& rho, const TruncatedBasis& basis,
                              const DiffusionCoefficients& coeffs) {
    const OscillatorParams& pp = basis.params;
    const double h = pp.hbar;
    const cplx i_unit(0.0, 1.0);

    const MatrixXcd q_rho = mul_banded_left(basis.q_op, rho, 1);
    const MatrixXcd rho_q = mul_banded_right(rho, basis.q_op, 1);
    const MatrixXcd p_rho = mul_banded_left(basis.p_op, rho, 1);
    const MatrixXcd rho_p = mul_banded_right(rho, basis.p_op, 1);

    // -(i/hbar) [h0, rho]
    MatrixXcd rhs = (-i_unit / h)
        * (mul_banded_left(basis.h0_op, rho, 2) - mul_banded_right(rho, basis.h0_op, 2));

    // -(i/2hbar)(lambda+mu) [q, rho p + p rho]
    const MatrixXcd sym_p = rho_p + p_rho;
    rhs += (-i_unit * (pp.lambda + pp.mu) / (2.0 * h))
        * (mul_banded_left(basis.q_op, sym_p, 1) - mul_banded_right(sym_p, basis.q_op, 1));

    // +(i/2hbar)(lambda-mu) [p, rho q + q rho]
    const MatrixXcd sym_q = rho_q + q_rho;
    rhs += (i_unit * (pp.lambda - pp.mu) / (2.0 * h))
        * (mul_banded_left(basis.p_op, sym_q, 1) - mul_banded_right(sym_q, basis.p_op, 1));

    // -(d_pp/hbar^2) [q, [q, rho]]
    const MatrixXcd comm_q = q_rho - rho_q;
    rhs += (-coeffs.d_pp / (h * h))
        * (mul_banded_left(basis.q_op, comm_q, 1) - mul_banded_right(comm_q, basis.q_op, 1));

    // -(d_qq/hbar^2) [p, [p, rho]]
    const MatrixXcd comm_p = p_rho - rho_p;
    rhs += (-coeffs.d_qq / (h * h))
        * (mul_banded_left(basis.p_op, comm_p, 1) - mul_banded_right(comm_p, basis.p_op, 1));

    // +(d_pq/hbar^2) ([q, [p, rho]] + [p, [q, rho]])
    if (coeffs.d_pq != 0.0) {
        rhs += (coeffs.d_pq / (h * h))
            * (mul_banded_left(basis.q_op, comm_p, 1) - mul_banded_right(comm_p, basis.q_op, 1)
             + mul_banded_left(basis.p_op, comm_q, 1) - mul_banded_right(comm_q, basis.p_op, 1));
    }
    return rhs;
}

ProjectedState project_initial_state(const InitialStateSpec& spec, const TruncatedBasis& basis,
                                     double tail_limit) {
    spec.require_valid();
    const OscillatorParams& pp = basis.params;
    const int dim = basis.dim;
    const double scale = std::sqrt(pp.m * pp.omega / pp.hbar);  // q -> x = scale * q

    const GaussianState init = initial_covariance(spec, pp);
    const double sx = std::sqrt(init.var_q) * scale;
    const double x0 = init.mean_q * scale;
    const double kx = std::abs(init.mean_p) / std::sqrt(pp.m * pp.omega * pp.hbar);

    // Cover both the packet and the classically allowed region of the highest
    // retained level, and resolve the fastest oscillation present.
    const double extent = std::max(std::sqrt(2.0 * dim + 1.0), std::abs(x0) + 10.0 * sx) + 6.0;
    double dx = std::min(0.02, sx / 20.0);
    if (kx > 1.0) dx = std::min(dx, 0.3 / kx);
    const int half = static_cast<int>(std::ceil(extent / dx));

    VectorXcd coeffs = VectorXcd::Zero(dim);
    std::vector<double> herm;
    for (int j = -half; j <= half; ++j) {
        const double x = j * dx;
        const double q = x / scale;
        const cplx psi = initial_wavefunction(spec, pp, q);
        hermite_functions(x, dim - 1, herm);
        for (int n = 0; n < dim; ++n) coeffs(n) += herm[n] * psi;
    }
    coeffs *= dx / std::sqrt(scale);  // includes the (hbar/m omega)^{1/4} Jacobian factor

    const double norm2 = coeffs.squaredNorm();
    const double top = (std::norm(coeffs(dim - 1)) + std::norm(coeffs(dim - 2))) / norm2;
    if (top > tail_limit) throw TruncationBreach(0.0, top, tail_limit);

    ProjectedState out;
    out.coeffs = coeffs;
    out.norm_deviation = std::abs(1.0 - norm2);
    out.top_occupation = top;
    out.rho.dim = dim;
    out.rho.t = 0.0;
    out.rho.values = coeffs * coeffs.adjoint() / norm2;
    return out;
}

OracleSample extract_moments(const FockDensityMatrix& rho, const TruncatedBasis& basis) {
    const MatrixXcd rq = mul_banded_right(rho.values, basis.q_op, 1);
    const MatrixXcd rp = mul_banded_right(rho.values, basis.p_op, 1);

    OracleSample s;
    s.t = rho.t;
    s.mean_q = rq.trace().real();
    s.mean_p = rp.trace().real();
    const double q2 = trace_product_banded(rq, basis.q_op, 1).real();
    const double p2 = trace_product_banded(rp, basis.p_op, 1).real();
    const double qp_sym = 0.5 * (trace_product_banded(rq, basis.p_op, 1)
                               + trace_product_banded(rp, basis.q_op, 1)).real();
    s.var_q = q2 - s.mean_q * s.mean_q;
    s.var_p = p2 - s.mean_p * s.mean_p;
    s.cov_qp = qp_sym - s.mean_q * s.mean_p;
    s.trace_deviation = std::abs(rho.values.trace().real() - 1.0) + std::abs(rho.values.trace().imag());
    s.top_occupation = rho.top_occupation();
    return s;
}

OracleRun integrate_oracle(const FockDensityMatrix& rho0, const TruncatedBasis& basis,
                           const DiffusionCoefficients& coeffs, const OracleConfig& cfg) {
    if (rho0.dim != basis.dim) throw std::invalid_argument("integrate_oracle: dimension mismatch");
    if (cfg.sample_stride < 1) throw std::invalid_argument("integrate_oracle: sample_stride must be >= 1");
    const long long n_steps = cfg.integrator.step_count();
    const double dt = cfg.integrator.dt;

    // Steps at which the smallest eigenvalue is spot-checked.
    std::set<long long> eigen_steps;
    if (cfg.eigenvalue_spot_checks > 0) {
        const int k = cfg.eigenvalue_spot_checks;
        for (int i = 0; i < k; ++i)
            eigen_steps.insert(k == 1 ? n_steps : (i * n_steps) / (k - 1));
    }

    OracleRun run;
    FockDensityMatrix rho = rho0;
    rho.t = 0.0;

    auto record = [&](long long step) {
        rho.t = static_cast<double>(step) * dt;
        OracleSample s = extract_moments(rho, basis);
        if (s.top_occupation > cfg.top_occupation_limit)
            throw TruncationBreach(rho.t, s.top_occupation, cfg.top_occupation_limit);
        run.samples.push_back(s);
        if (eigen_steps.count(step)) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho.values, Eigen::EigenvaluesOnly);
            run.min_eigenvalues.emplace_back(rho.t, es.eigenvalues().minCoeff());
        }
    };

    record(0);
    MatrixXcd y = rho.values;
    for (long long step = 1; step <= n_steps; ++step) {
        const MatrixXcd k1 = lindblad_rhs(y, basis, coeffs);
        const MatrixXcd k2 = lindblad_rhs(y + (0.5 * dt) * k1, basis, coeffs);
        const MatrixXcd k3 = lindblad_rhs(y + (0.5 * dt) * k2, basis, coeffs);
        const MatrixXcd k4 = lindblad_rhs(y + dt * k3, basis, coeffs);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (step % cfg.sample_stride == 0 || step == n_steps || eigen_steps.count(step)) {
            rho.values = y;
            record(step);
        }
    }
    rho.values = y;
    rho.t = static_cast<double>(n_steps) * dt;
    run.final_rho = rho;
    return run;
}

FockDensityMatrix thermal_state(const TruncatedBasis& basis, const ThermalBath& bath) {
    const double c = bath.coth_eps();
    const double w = (c - 1.0) / (c + 1.0);  // Boltzmann ratio e^{-hbar omega / kT}
    FockDensityMatrix rho;
    rho.dim = basis.dim;
    rho.t = std::numeric_limits<double>::infinity();
    rho.values = MatrixXcd::Zero(basis.dim, basis.dim);
    double weight = 1.0;
    double total = 0.0;
    for (int n = 0; n < basis.dim; ++n) {
        rho.values(n, n) = weight;
        total += weight;
        weight *= w;
    }
    rho.values /= total;
    return rho;
}

}  // namespace lindosc::fock
