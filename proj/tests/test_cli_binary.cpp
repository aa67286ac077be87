#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks of the installed binary: argument handling, exit codes
// and the messages scripts are expected to grep for.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef LINDOSC_CLI_PATH
#error "LINDOSC_CLI_PATH must point at the lindosc binary"
#endif

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path err_file =
        fs::temp_directory_path() / ("lindosc_cli_err_" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        std::string(LINDOSC_CLI_PATH) + " " + args + " >/dev/null 2>" + err_file.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(raw);
    r.err = slurp(err_file);
    fs::remove(err_file);
    return r;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path dir = fs::temp_directory_path() / "lindosc_cli_tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << body;
    return p;
}

const char* kGoodConfig =
    "oscillator.lambda = 0.2\n"
    "oscillator.mu = 0.1\n"
    "bath.coth_eps = 1.5\n"
    "integrator.dt = 1e-3\n"
    "integrator.t_end = 5\n"
    "integrator.sample_stride = 100\n";

fs::path out_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "lindosc_cli_tests" / name;
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("binary: no arguments prints usage and fails") {
    CHECK(run_cli("").exit_code != 0);
    CHECK(run_cli("frobnicate").exit_code != 0);
}

TEST_CASE("binary: simulate succeeds on a valid config") {
    const fs::path cfg = write_config("good.cfg", kGoodConfig);
    const fs::path dir = out_dir("sim");
    const RunResult r = run_cli("simulate --config " + cfg.string() + " --out " + dir.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "report.txt"));
}

TEST_CASE("binary: constraint failure names the inequality, exit 2") {
    const fs::path cfg = write_config("ordered.cfg",
                                      "oscillator.lambda = 0.1\n"
                                      "oscillator.mu = 0.2\n"
                                      "bath.coth_eps = 1.5\n");
    RunResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                          out_dir("sim_bad").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("lambda > mu") != std::string::npos);

    const fs::path cold = write_config("cold.cfg",
                                       "oscillator.lambda = 0.2\n"
                                       "oscillator.mu = 0.1\n"
                                       "bath.coth_eps = 1.0\n");
    r = run_cli("simulate --config " + cold.string() + " --out " + out_dir("sim_cold").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("0.03 < 0.04") != std::string::npos);
}

TEST_CASE("binary: config problems are line-precise, exit 2; missing file exit 3") {
    const fs::path cfg = write_config("broken.cfg",
                                      "oscillator.lambda = 0.2\n"
                                      "bath.coth_eps = 1.5\n"
                                      "mystery.key = 7\n");
    const RunResult r = run_cli("simulate --config " + cfg.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);

    CHECK(run_cli("simulate --config /no/such/file.cfg").exit_code == 3);
}

TEST_CASE("binary: sweep parses axis and values") {
    const fs::path cfg = write_config("good.cfg", kGoodConfig);
    const fs::path dir = out_dir("sweep");
    const RunResult r = run_cli("sweep --config " + cfg.string() + " --out " + dir.string() +
                                " --axis coth_eps --values 1.5,2,5");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "sweep.csv"));

    CHECK(run_cli("sweep --config " + cfg.string() + " --axis nope --values 1").exit_code == 2);
    CHECK(run_cli("sweep --config " + cfg.string() + " --axis r --values 0.1,oops").exit_code == 2);
}

TEST_CASE("binary: grid at steady state and at a time") {
    const fs::path cfg = write_config("good.cfg", kGoodConfig);
    const fs::path dir = out_dir("grid");
    CHECK(run_cli("grid --config " + cfg.string() + " --out " + dir.string() + " --time steady")
              .exit_code == 0);
    CHECK(fs::exists(dir / "rho_grid.csv"));
    CHECK(run_cli("grid --config " + cfg.string() + " --out " + dir.string() + " --time 2.5")
              .exit_code == 0);
    CHECK(run_cli("grid --config " + cfg.string() + " --time nonsense").exit_code == 2);
}

TEST_CASE("binary: verify exit codes: ok and truncation breach") {
    const fs::path ok_cfg = write_config("verify_ok.cfg",
                                         "oscillator.lambda = 0.2\n"
                                         "oscillator.mu = 0.1\n"
                                         "bath.coth_eps = 1.5\n"
                                         "integrator.dt = 1e-3\n"
                                         "integrator.t_end = 1\n"
                                         "integrator.sample_stride = 100\n"
                                         "oracle.enabled = true\n"
                                         "oracle.dim = 20\n");
    CHECK(run_cli("verify --config " + ok_cfg.string() + " --out " + out_dir("verify").string())
              .exit_code == 0);

    const fs::path breach_cfg = write_config("verify_breach.cfg",
                                             "oscillator.lambda = 0.2\n"
                                             "oscillator.mu = 0.1\n"
                                             "bath.coth_eps = 1.5\n"
                                             "state.q0 = 2\n"
                                             "integrator.dt = 1e-3\n"
                                             "integrator.t_end = 1\n"
                                             "oracle.enabled = true\n"
                                             "oracle.dim = 8\n");
    const RunResult r = run_cli("verify --config " + breach_cfg.string() + " --out " +
                                out_dir("verify_breach").string());
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("truncation breach at t = ") != std::string::npos);
}
