#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lindosc/config.hpp"

using namespace lindosc;

namespace {

const char* kBaselineConfig = R"(# baseline run
oscillator.lambda = 0.2
oscillator.mu = 0.1
bath.coth_eps = 1.5

state.delta = 1
state.r = 0
integrator.dt = 1e-3
integrator.t_end = 25
integrator.sample_stride = 10
)";

}  // namespace

TEST_CASE("parse: baseline with defaults") {
    const RunConfig c = parse_config(kBaselineConfig);
    CHECK(c.params.m == 1.0);
    CHECK(c.params.omega == 1.0);
    CHECK(c.params.lambda == 0.2);
    CHECK(c.params.mu == 0.1);
    CHECK(c.params.hbar == 1.0);
    CHECK_FALSE(c.bath.by_temperature);
    CHECK(c.bath.value == 1.5);
    CHECK(c.state.delta == 1.0);
    CHECK(c.integrator.dt == 1e-3);
    CHECK(c.integrator.t_end == 25.0);
    CHECK(c.sample_stride == 10);
    CHECK(c.oracle.dim == 60);
    CHECK(c.grid.n == 101);
    CHECK_FALSE(c.grid.q_min.has_value());
    CHECK(c.make_bath().coth_eps() == 1.5);
}

TEST_CASE("parse: temperature mode bath") {
    RunConfig c = parse_config("oscillator.lambda = 0.2\nbath.temperature = 0.62\n");
    CHECK(c.bath.by_temperature);
    CHECK(c.make_bath().coth_eps() > 1.0);
    c = parse_config("oscillator.lambda = 0.2\nbath.temperature = 0\n");
    CHECK(c.make_bath().coth_eps() == 1.0);
}

TEST_CASE("parse: line-precise failures") {
    auto line_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };

    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = abc\n") == 2);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 0.5\n") == 2);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\nnot a pair\n") == 3);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\nwrong.key = 1\n") == 3);
    CHECK(line_of("oscillator.lambda = 0.2\noscillator.lambda = 0.3\nbath.coth_eps = 1.5\n") == 2);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.temperature = 1\nbath.coth_eps = 1.5\n") == 3);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\ngrid.n = 1\n") == 3);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\nintegrator.sample_stride = 0\n") == 3);

    // cross-field problems surface at file level (line 0)
    CHECK(line_of("oscillator.lambda = 0.2\n") == 0);                       // no bath
    CHECK(line_of("bath.coth_eps = 1.5\n") == 0);                           // no lambda
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\ngrid.q_min = -1\n") == 0);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\nintegrator.dt = 3e-3\n") == 0);
    CHECK(line_of("oscillator.lambda = 0.2\nbath.coth_eps = 1.5\nstate.delta = -1\n") == 0);
}

TEST_CASE("round trip: serialize then parse is the identity") {
    RunConfig c = parse_config(kBaselineConfig);
    c.params.mu = 0.123456789012345678;  // not representable exactly; must still round-trip
    c.grid.q_min = -4.75;
    c.grid.q_max = 4.75;
    c.oracle.enabled = true;
    c.output.dir = "somewhere/else";
    const RunConfig again = parse_config(serialize_config(c));
    CHECK(config_equal(c, again));

    RunConfig temp_mode = parse_config("oscillator.lambda = 0.3\nbath.temperature = 2.5\n");
    CHECK(config_equal(temp_mode, parse_config(serialize_config(temp_mode))));
}

TEST_CASE("load: missing file is an I/O error, not a ConfigError") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/run.cfg"), std::runtime_error);
    try {
        load_config("/nonexistent/path/run.cfg");
    } catch (const ConfigError&) {
        FAIL("missing file must not be classified as a config error");
    } catch (const std::runtime_error&) {
    }
}
