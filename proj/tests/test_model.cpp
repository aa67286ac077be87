#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lindosc/model.hpp"
#include "test_util.hpp"

using namespace lindosc;

TEST_CASE("thermal coefficients: direct substitutions") {
    OscillatorParams p{1.0, 1.0, 0.2, 0.1, 1.0};
    DiffusionCoefficients d = thermal_coefficients(p, ThermalBath::from_coth(1.5));
    CHECK(d.d_pp == doctest::Approx(0.225).epsilon(1e-14));
    CHECK(d.d_qq == doctest::Approx(0.075).epsilon(1e-14));
    CHECK(d.d_pq == 0.0);

    p.mu = 0.0;
    d = thermal_coefficients(p, ThermalBath::from_coth(1.0));
    CHECK(d.d_pp == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(d.d_qq == doctest::Approx(0.1).epsilon(1e-14));

    OscillatorParams p2{2.0, 0.5, 0.3, 0.1, 1.0};
    d = thermal_coefficients(p2, ThermalBath::from_coth(2.0));
    CHECK(d.d_pp == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(d.d_qq == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("thermal coefficients: rejects lambda <= |mu|") {
    OscillatorParams p{1.0, 1.0, 0.1, 0.2, 1.0};
    CHECK_THROWS_AS(thermal_coefficients(p, ThermalBath::from_coth(2.0)), std::invalid_argument);
    p.mu = -0.2;
    CHECK_THROWS_AS(thermal_coefficients(p, ThermalBath::from_coth(2.0)), std::invalid_argument);
    p.mu = 0.1;  // equality is also out
    p.lambda = 0.1;
    CHECK_THROWS_AS(thermal_coefficients(p, ThermalBath::from_coth(2.0)), std::invalid_argument);
}

TEST_CASE("constraint gate: accepts and rejects with reported values") {
    OscillatorParams p{1.0, 1.0, 0.2, 0.1, 1.0};

    ValidationReport rep = validate_constraints(p, ThermalBath::from_coth(1.5));
    CHECK(rep.passed);
    const ConstraintCheck& gibbs = rep.checks[3];
    CHECK(gibbs.lhs == doctest::Approx(0.0675).epsilon(1e-14));
    CHECK(gibbs.rhs == doctest::Approx(0.04).epsilon(1e-14));

    rep = validate_constraints(p, ThermalBath::from_coth(1.0));
    CHECK_FALSE(rep.passed);
    REQUIRE(rep.first_failure() != nullptr);
    CHECK(rep.first_failure()->name == "(lambda^2 - mu^2) coth^2(eps) >= lambda^2");
    CHECK(rep.first_failure()->lhs == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(rep.first_failure()->rhs == doctest::Approx(0.04).epsilon(1e-14));

    p.lambda = 0.1;
    p.mu = 0.2;
    rep = validate_constraints(p, ThermalBath::from_coth(5.0));
    CHECK_FALSE(rep.passed);
    CHECK(rep.first_failure()->name == "lambda > mu");
}

TEST_CASE("constraint gate: boundary equality passes") {
    // coth(eps) exactly at the threshold lambda/sqrt(lambda^2 - mu^2).
    OscillatorParams p{1.0, 1.0, 0.2, 0.1, 1.0};
    const double c_star = p.lambda / std::sqrt(p.lambda * p.lambda - p.mu * p.mu);
    CHECK(validate_constraints(p, ThermalBath::from_coth(c_star)).passed);
}

TEST_CASE("initial covariance: reference states") {
    OscillatorParams p{1.0, 1.0, 0.2, 0.1, 1.0};

    GaussianState glauber = initial_covariance({1.0, 0.0, 0.0, 0.0}, p);
    CHECK(glauber.var_q == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(glauber.var_p == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(glauber.cov_qp == 0.0);

    GaussianState squeezed = initial_covariance({2.0, 0.5, 0.0, 0.0}, p);
    CHECK(squeezed.var_q == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(squeezed.var_p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(squeezed.cov_qp == doctest::Approx(0.25 / std::sqrt(0.75)).epsilon(1e-15));
    CHECK(generalized_uncertainty(squeezed) == doctest::Approx(0.25).epsilon(1e-13));

    GaussianState narrow = initial_covariance({0.5, 0.0, 0.0, 0.0}, p);
    CHECK(narrow.var_q == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(narrow.var_p == doctest::Approx(1.0).epsilon(1e-15));

    GaussianState moved = initial_covariance({1.0, 0.0, 0.7, -0.3}, p);
    CHECK(moved.mean_q == 0.7);
    CHECK(moved.mean_p == -0.3);
}

TEST_CASE("initial covariance: rejects bad squeezing or correlation") {
    OscillatorParams p;
    CHECK_THROWS_AS(initial_covariance({0.0, 0.0, 0.0, 0.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(initial_covariance({-1.0, 0.0, 0.0, 0.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(initial_covariance({1.0, 1.0, 0.0, 0.0}, p), std::invalid_argument);
    CHECK_THROWS_AS(initial_covariance({1.0, -1.01, 0.0, 0.0}, p), std::invalid_argument);
}

TEST_CASE("generalized uncertainty: reference values") {
    CHECK(generalized_uncertainty({0.0, 0.0, 0.0, 0.75, 0.75, 0.0}) ==
          doctest::Approx(0.5625).epsilon(1e-15));
    CHECK(generalized_uncertainty({0.0, 0.0, 0.0, 1.0, 1.0 / 3.0, 0.25 / std::sqrt(0.75)}) ==
          doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("property: every (delta, r) initial state is minimum uncertainty") {
    testutil::Rng rng(20251101);
    for (int i = 0; i < 200; ++i) {
        const OscillatorParams p = testutil::random_params(rng);
        const InitialStateSpec spec = testutil::random_spec(rng);
        const double sigma = generalized_uncertainty(initial_covariance(spec, p));
        const double target = 0.25 * p.hbar * p.hbar;
        CHECK(std::abs(sigma - target) <= 1e-12 * target);
    }
}

TEST_CASE("property: fundamental constraint and Gibbs inequality agree") {
    testutil::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        lindosc::OscillatorParams p = testutil::random_params(rng);
        const double c_star = p.lambda / std::sqrt(p.lambda * p.lambda - p.mu * p.mu);
        // Cluster draws around the pass/fail threshold.
        double factor;
        switch (i % 5) {
            case 0: factor = rng.uniform(1.0 + 1e-9, 3.0); break;
            case 1: factor = rng.uniform(0.5, 1.0 - 1e-9); break;
            case 2: factor = 1.0; break;
            case 3: factor = 1.0 - 1e-13; break;
            default: factor = 1.0 + 1e-13; break;
        }
        const double c = std::max(1.0, c_star * factor);
        const ValidationReport rep = validate_constraints(p, ThermalBath::from_coth(c));
        CHECK(rep.checks[3].passed == rep.checks[4].passed);
    }
}

TEST_CASE("property: gate is monotone in coth(eps)") {
    testutil::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        lindosc::OscillatorParams p = testutil::random_params(rng);
        const double c1 = rng.log_uniform(1.0, 20.0);
        const double c2 = c1 * rng.log_uniform(1.0, 5.0);
        const bool at_c1 = validate_constraints(p, ThermalBath::from_coth(c1)).passed;
        const bool at_c2 = validate_constraints(p, ThermalBath::from_coth(c2)).passed;
        if (at_c1) CHECK(at_c2);
    }
}

TEST_CASE("bath: coth(eps) from temperature") {
    OscillatorParams p;  // hbar = omega = 1

    const ThermalBath zero = ThermalBath::from_temperature(0.0, p);
    CHECK(zero.coth_eps() == 1.0);
    CHECK(std::isinf(zero.epsilon()));

    testutil::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const double temperature = rng.log_uniform(1e-3, 1e3);
        const ThermalBath b = ThermalBath::from_temperature(temperature, p);
        CHECK(b.coth_eps() >= 1.0);
        // epsilon round-trips back to hbar*omega/(2kT); recovering eps from
        // coth(eps) is ill-conditioned once coth saturates toward 1, so the
        // tolerance widens with eps.
        const double eps = p.hbar * p.omega / (2.0 * temperature);
        if (eps < 5.0)
            CHECK(b.epsilon() == doctest::Approx(eps).epsilon(1e-10));
        else if (eps < 12.0)
            CHECK(b.epsilon() == doctest::Approx(eps).epsilon(1e-6));
    }

    // very low T saturates to exactly 1
    CHECK(ThermalBath::from_temperature(1e-12, p).coth_eps() == 1.0);
    CHECK_THROWS_AS(ThermalBath::from_temperature(-1.0, p), std::invalid_argument);
    CHECK_THROWS_AS(ThermalBath::from_coth(0.99), std::invalid_argument);
}
