#include "lindosc/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace lindosc {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    return std::string(s.substr(b, e - b + 1));
}

struct Entry {
    std::string value;
    int line;
};

double parse_double(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(e.line, key + ": not a number: '" + e.value + "'");
    return v;
}

long long parse_int(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError(e.line, key + ": not an integer: '" + e.value + "'");
    return v;
}

bool parse_bool(const Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError(e.line, key + ": expected true/false: '" + e.value + "'");
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ThermalBath RunConfig::make_bath() const {
    if (bath.by_temperature)
        return ThermalBath::from_temperature(bath.value, params, bath.boltzmann_k);
    return ThermalBath::from_coth(bath.value);
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Entry> entries;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "empty key");
        if (entries.count(key))
            throw ConfigError(line_no, "duplicate key '" + key + "' (first set on line " +
                                           std::to_string(entries[key].line) + ")");
        entries[key] = {value, line_no};
    }

    RunConfig cfg;
    bool have_lambda = false, have_temp = false, have_coth = false;

    auto take = [&](const std::string& key) -> std::optional<Entry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        Entry e = it->second;
        entries.erase(it);
        return e;
    };
    auto take_double = [&](const std::string& key, double& dst) -> std::optional<Entry> {
        auto e = take(key);
        if (e) dst = parse_double(*e, key);
        return e;
    };

    take_double("oscillator.m", cfg.params.m);
    take_double("oscillator.omega", cfg.params.omega);
    if (take_double("oscillator.lambda", cfg.params.lambda)) have_lambda = true;
    take_double("oscillator.mu", cfg.params.mu);
    take_double("oscillator.hbar", cfg.params.hbar);

    if (auto e = take("bath.temperature")) {
        cfg.bath.by_temperature = true;
        cfg.bath.value = parse_double(*e, "bath.temperature");
        have_temp = true;
        if (cfg.bath.value < 0.0) throw ConfigError(e->line, "bath.temperature: must be >= 0");
    }
    if (auto e = take("bath.coth_eps")) {
        if (have_temp) throw ConfigError(e->line, "bath.coth_eps: bath already specified by temperature");
        cfg.bath.by_temperature = false;
        cfg.bath.value = parse_double(*e, "bath.coth_eps");
        have_coth = true;
        if (!(cfg.bath.value >= 1.0)) throw ConfigError(e->line, "bath.coth_eps: must be >= 1");
    }
    if (auto e = take("bath.boltzmann_k")) {
        cfg.bath.boltzmann_k = parse_double(*e, "bath.boltzmann_k");
        if (!(cfg.bath.boltzmann_k > 0.0)) throw ConfigError(e->line, "bath.boltzmann_k: must be > 0");
    }

    take_double("state.delta", cfg.state.delta);
    take_double("state.r", cfg.state.r);
    take_double("state.q0", cfg.state.q0);
    take_double("state.p0", cfg.state.p0);

    take_double("integrator.dt", cfg.integrator.dt);
    take_double("integrator.t_end", cfg.integrator.t_end);
    if (auto e = take("integrator.sample_stride")) {
        cfg.sample_stride = parse_int(*e, "integrator.sample_stride");
        if (cfg.sample_stride < 1) throw ConfigError(e->line, "integrator.sample_stride: must be >= 1");
    }

    if (auto e = take("oracle.enabled")) cfg.oracle.enabled = parse_bool(*e, "oracle.enabled");
    if (auto e = take("oracle.dim")) {
        cfg.oracle.dim = static_cast<int>(parse_int(*e, "oracle.dim"));
        if (cfg.oracle.dim < 4) throw ConfigError(e->line, "oracle.dim: must be >= 4");
    }
    if (auto e = take("oracle.top_occupation_limit")) {
        cfg.oracle.top_occupation_limit = parse_double(*e, "oracle.top_occupation_limit");
        if (!(cfg.oracle.top_occupation_limit > 0.0))
            throw ConfigError(e->line, "oracle.top_occupation_limit: must be > 0");
    }
    if (auto e = take("oracle.projection_tail_limit")) {
        cfg.oracle.projection_tail_limit = parse_double(*e, "oracle.projection_tail_limit");
        if (!(cfg.oracle.projection_tail_limit > 0.0))
            throw ConfigError(e->line, "oracle.projection_tail_limit: must be > 0");
    }
    if (auto e = take("oracle.sigma_tolerance")) {
        cfg.oracle.sigma_tolerance = parse_double(*e, "oracle.sigma_tolerance");
        if (!(cfg.oracle.sigma_tolerance > 0.0))
            throw ConfigError(e->line, "oracle.sigma_tolerance: must be > 0");
    }
    if (auto e = take("oracle.eigenvalue_spot_checks")) {
        cfg.oracle.eigenvalue_spot_checks = static_cast<int>(parse_int(*e, "oracle.eigenvalue_spot_checks"));
        if (cfg.oracle.eigenvalue_spot_checks < 0)
            throw ConfigError(e->line, "oracle.eigenvalue_spot_checks: must be >= 0");
    }

    double tmp = 0.0;
    if (take_double("grid.q_min", tmp)) cfg.grid.q_min = tmp;
    if (take_double("grid.q_max", tmp)) cfg.grid.q_max = tmp;
    if (auto e = take("grid.n")) {
        cfg.grid.n = static_cast<int>(parse_int(*e, "grid.n"));
        if (cfg.grid.n < 2) throw ConfigError(e->line, "grid.n: must be >= 2");
    }

    if (auto e = take("output.dir")) cfg.output.dir = e->value;
    if (auto e = take("output.format_version")) {
        cfg.output.format_version = static_cast<int>(parse_int(*e, "output.format_version"));
        if (cfg.output.format_version != 1)
            throw ConfigError(e->line, "output.format_version: only version 1 is supported");
    }

    if (!entries.empty()) {
        const auto& [key, entry] = *entries.begin();
        throw ConfigError(entry.line, "unknown key '" + key + "'");
    }

    // Field-level invariants, reported against the lines that set them when known.
    try {
        cfg.params.require_basic();
        cfg.state.require_valid();
        cfg.integrator.step_count();
    } catch (const std::exception& ex) {
        throw ConfigError(0, ex.what());
    }
    if (!have_lambda) throw ConfigError(0, "oscillator.lambda is required");
    if (!have_temp && !have_coth)
        throw ConfigError(0, "exactly one of bath.temperature / bath.coth_eps is required");
    if (cfg.grid.q_min.has_value() != cfg.grid.q_max.has_value())
        throw ConfigError(0, "grid.q_min and grid.q_max must be given together");
    if (cfg.grid.q_min && !(*cfg.grid.q_min < *cfg.grid.q_max))
        throw ConfigError(0, "grid.q_min must be < grid.q_max");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "oscillator.m = " << format_full(c.params.m) << "\n";
    out << "oscillator.omega = " << format_full(c.params.omega) << "\n";
    out << "oscillator.lambda = " << format_full(c.params.lambda) << "\n";
    out << "oscillator.mu = " << format_full(c.params.mu) << "\n";
    out << "oscillator.hbar = " << format_full(c.params.hbar) << "\n";
    if (c.bath.by_temperature) {
        out << "bath.temperature = " << format_full(c.bath.value) << "\n";
        out << "bath.boltzmann_k = " << format_full(c.bath.boltzmann_k) << "\n";
    } else {
        out << "bath.coth_eps = " << format_full(c.bath.value) << "\n";
    }
    out << "state.delta = " << format_full(c.state.delta) << "\n";
    out << "state.r = " << format_full(c.state.r) << "\n";
    out << "state.q0 = " << format_full(c.state.q0) << "\n";
    out << "state.p0 = " << format_full(c.state.p0) << "\n";
    out << "integrator.dt = " << format_full(c.integrator.dt) << "\n";
    out << "integrator.t_end = " << format_full(c.integrator.t_end) << "\n";
    out << "integrator.sample_stride = " << c.sample_stride << "\n";
    out << "oracle.enabled = " << (c.oracle.enabled ? "true" : "false") << "\n";
    out << "oracle.dim = " << c.oracle.dim << "\n";
    out << "oracle.top_occupation_limit = " << format_full(c.oracle.top_occupation_limit) << "\n";
    out << "oracle.projection_tail_limit = " << format_full(c.oracle.projection_tail_limit) << "\n";
    out << "oracle.sigma_tolerance = " << format_full(c.oracle.sigma_tolerance) << "\n";
    out << "oracle.eigenvalue_spot_checks = " << c.oracle.eigenvalue_spot_checks << "\n";
    if (c.grid.q_min) {
        out << "grid.q_min = " << format_full(*c.grid.q_min) << "\n";
        out << "grid.q_max = " << format_full(*c.grid.q_max) << "\n";
    }
    out << "grid.n = " << c.grid.n << "\n";
    out << "output.dir = " << c.output.dir << "\n";
    out << "output.format_version = " << c.output.format_version << "\n";
    return out.str();
}

bool config_equal(const RunConfig& a, const RunConfig& b) {
    return a.params.m == b.params.m && a.params.omega == b.params.omega
        && a.params.lambda == b.params.lambda && a.params.mu == b.params.mu
        && a.params.hbar == b.params.hbar
        && a.bath.by_temperature == b.bath.by_temperature && a.bath.value == b.bath.value
        && a.bath.boltzmann_k == b.bath.boltzmann_k
        && a.state.delta == b.state.delta && a.state.r == b.state.r
        && a.state.q0 == b.state.q0 && a.state.p0 == b.state.p0
        && a.integrator.dt == b.integrator.dt && a.integrator.t_end == b.integrator.t_end
        && a.sample_stride == b.sample_stride
        && a.oracle.enabled == b.oracle.enabled && a.oracle.dim == b.oracle.dim
        && a.oracle.top_occupation_limit == b.oracle.top_occupation_limit
        && a.oracle.projection_tail_limit == b.oracle.projection_tail_limit
        && a.oracle.sigma_tolerance == b.oracle.sigma_tolerance
        && a.oracle.eigenvalue_spot_checks == b.oracle.eigenvalue_spot_checks
        && a.grid.q_min == b.grid.q_min && a.grid.q_max == b.grid.q_max && a.grid.n == b.grid.n
        && a.output.dir == b.output.dir && a.output.format_version == b.output.format_version;
}

}  // namespace lindosc
