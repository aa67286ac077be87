#pragma once

// Flat key = value run configuration with dotted sections
// (oscillator.lambda = 0.2). Parse errors carry the offending line number;
// serialization round-trips every field exactly.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lindosc/evolution.hpp"
#include "lindosc/model.hpp"

namespace lindosc {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + message
                                      : "config: " + message),
          line_(line) {}
    /// 1-based line number; 0 for file-level errors.
    int line() const { return line_; }

private:
    int line_;
};

struct BathSpec {
    bool by_temperature = false;
    double value = 1.0;        ///< temperature or coth(eps), per mode
    double boltzmann_k = 1.0;  ///< used only in temperature mode
};

struct OracleSettings {
    bool enabled = false;
    int dim = 60;
    double top_occupation_limit = 1e-6;
    double projection_tail_limit = 1e-10;
    double sigma_tolerance = 1e-4;
    int eigenvalue_spot_checks = 5;
};

struct GridSettings {
    std::optional<double> q_min;  ///< both bounds absent selects auto-sizing
    std::optional<double> q_max;
    int n = 101;
};

struct OutputSettings {
    std::string dir = "out";
    int format_version = 1;
};

struct RunConfig {
    OscillatorParams params;
    BathSpec bath;
    InitialStateSpec state;
    IntegratorConfig integrator{1e-3, 10.0};
    long long sample_stride = 10;
    OracleSettings oracle;
    GridSettings grid;
    OutputSettings output;

    ThermalBath make_bath() const;
};

/// Parses and validates configuration text. Throws ConfigError with the
/// offending line number; cross-field violations report line 0.
RunConfig parse_config(std::string_view text);

/// Reads a configuration file. Open failures throw std::runtime_error
/// (an I/O error, distinct from validation).
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c field by field.
std::string serialize_config(const RunConfig& config);

bool config_equal(const RunConfig& a, const RunConfig& b);

}  // namespace lindosc
