// Command-line front end: simulate | sweep | grid | verify.

#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lindosc/commands.hpp"
#include "lindosc/config.hpp"

namespace {

int load_and_run(const std::string& config_path,
                 const std::function<int(const lindosc::RunConfig&)>& body) {
    lindosc::RunConfig config;
    try {
        config = lindosc::load_config(config_path);
    } catch (const lindosc::ConfigError& ex) {
        std::cerr << ex.what() << "\n";
        return lindosc::cli::kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return lindosc::cli::kExitIo;
    }
    return body(config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lindblad damped-oscillator decoherence simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    bool no_header_comment = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key = value)")->required();
        cmd->add_option("--out", out_dir, "output directory (overrides output.dir)");
        cmd->add_flag("--no-header-comment", no_header_comment, "omit '#' comment lines in CSVs");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "integrate moments, write trajectory + report");
    add_common(simulate);

    CLI::App* sweep = app.add_subcommand("sweep", "closed-form metrics over a parameter axis");
    add_common(sweep);
    std::string axis_name;
    std::string values_csv;
    sweep->add_option("--axis", axis_name, "one of coth_eps, delta, r, lambda")->required();
    sweep->add_option("--values", values_csv, "comma-separated axis values")->required();

    CLI::App* grid = app.add_subcommand("grid", "density matrix on a coordinate grid");
    add_common(grid);
    std::string time_arg;
    grid->add_option("--time", time_arg, "evaluation time, or 'steady'")->required();

    CLI::App* verify = app.add_subcommand("verify", "Fock-basis oracle vs Gaussian closed form");
    add_common(verify);

    CLI11_PARSE(app, argc, argv);

    lindosc::cli::CommandOptions options;
    options.out_dir = out_dir;
    options.header_comment = !no_header_comment;

    if (simulate->parsed())
        return load_and_run(config_path, [&](const lindosc::RunConfig& c) {
            return lindosc::cli::cmd_simulate(c, options);
        });

    if (sweep->parsed()) {
        const auto axis = lindosc::cli::sweep_axis_from_string(axis_name);
        if (!axis) {
            std::cerr << "sweep: unknown axis '" << axis_name << "'\n";
            return lindosc::cli::kExitValidation;
        }
        std::vector<double> values;
        size_t pos = 0;
        while (pos <= values_csv.size()) {
            size_t comma = values_csv.find(',', pos);
            if (comma == std::string::npos) comma = values_csv.size();
            const std::string item = values_csv.substr(pos, comma - pos);
            try {
                size_t used = 0;
                values.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                std::cerr << "sweep: bad value '" << item << "'\n";
                return lindosc::cli::kExitValidation;
            }
            pos = comma + 1;
        }
        return load_and_run(config_path, [&](const lindosc::RunConfig& c) {
            return lindosc::cli::cmd_sweep(c, options, *axis, values);
        });
    }

    if (grid->parsed()) {
        std::optional<double> time;
        if (time_arg != "steady") {
            try {
                size_t used = 0;
                time = std::stod(time_arg, &used);
                if (used != time_arg.size()) throw std::invalid_argument(time_arg);
            } catch (const std::exception&) {
                std::cerr << "grid: bad --time value '" << time_arg << "'\n";
                return lindosc::cli::kExitValidation;
            }
        }
        return load_and_run(config_path, [&](const lindosc::RunConfig& c) {
            return lindosc::cli::cmd_grid(c, options, time);
        });
    }

    return load_and_run(config_path, [&](const lindosc::RunConfig& c) {
        return lindosc::cli::cmd_verify(c, options);
    });
}
