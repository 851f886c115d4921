#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(OTALG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("tfmin subcommand writes its table and manifest") {
    TempDir dir("otalg_cli_tfmin");
    CHECK(run_cli("tfmin --out " + dir.path.string()) == 0);
    CHECK(fs::exists(dir.path / "tfmin.csv"));
    CHECK(fs::exists(dir.path / "manifest.json"));
    CHECK(slurp(dir.path / "tfmin.csv").rfind("t_f_min_s,t_f_s,feasible\n", 0) == 0);
}

TEST_CASE("simulate subcommand produces trajectory, events and summary") {
    TempDir dir("otalg_cli_sim");
    // short flight via config override keeps the test fast
    const fs::path cfg = dir.path / "cfg.json";
    std::ofstream(cfg) << R"({"scenario": {"guidance": {"t_f_s": 10.0},
                              "initial": {"r_m": [100, 50, 400], "v_mps": [-10, -5, -40]}}})";
    CHECK(run_cli("simulate --law ogl --config " + cfg.string() + " --out " + dir.path.string()) ==
          0);
    CHECK(slurp(dir.path / "trajectory.csv").rfind("t,rx,ry,rz,", 0) == 0);
    CHECK(fs::exists(dir.path / "events.csv"));
    CHECK(fs::exists(dir.path / "summary.csv"));
    const std::string manifest = slurp(dir.path / "manifest.json");
    CHECK(manifest.find("trajectory.csv") != std::string::npos);
    CHECK(manifest.find("\"command\": \"simulate\"") != std::string::npos);
}

TEST_CASE("montecarlo subcommand is byte-stable across reruns") {
    TempDir a("otalg_cli_mc_a");
    TempDir b("otalg_cli_mc_b");
    const fs::path cfg = a.path / "cfg.json";
    std::ofstream(cfg) << R"({"scenario": {"guidance": {"t_f_s": 20.0}},
                              "monte_carlo": {"n_runs": 4, "laws": ["mss-otalg", "otalg"],
                              "dispersion": {"z0_m": {"mean": 600, "sd": 50},
                                             "vz0_mps": {"mean": -30, "sd": 5}}}})";
    const std::string common = " --config " + cfg.string() + " --seed 7 --out ";
    CHECK(run_cli("montecarlo" + common + a.path.string()) == 0);
    CHECK(run_cli("montecarlo" + common + b.path.string()) == 0);
    CHECK(fs::exists(a.path / "runs_mss-otalg.csv"));
    CHECK(fs::exists(a.path / "runs_otalg.csv"));
    const std::string stats_a = slurp(a.path / "stats.csv");
    CHECK(stats_a == slurp(b.path / "stats.csv"));
    CHECK(slurp(a.path / "runs_otalg.csv") == slurp(b.path / "runs_otalg.csv"));
    CHECK(stats_a.rfind("law,n_runs,n_failed,", 0) == 0);
}

TEST_CASE("barriers subcommand samples the configured terrain") {
    TempDir dir("otalg_cli_barriers");
    CHECK(run_cli("barriers --out " + dir.path.string()) == 0);
    const std::string csv = slurp(dir.path / "barriers.csv");
    CHECK(csv.rfind("r_z,rho_x_plus,rho_x_minus,rho_y_plus,rho_y_minus\n", 0) == 0);
}

TEST_CASE("check-pfts subcommand writes the feasibility table") {
    TempDir dir("otalg_cli_pfts");
    const fs::path cfg = dir.path / "cfg.json";
    std::ofstream(cfg) << R"({"scenario": {"guidance": {"t_f_s": 15.0},
                              "initial": {"r_m": [50, 20, 500], "v_mps": [-5, -2, -50]}}})";
    CHECK(run_cli("check-pfts --config " + cfg.string() + " --out " + dir.path.string()) == 0);
    const std::string csv = slurp(dir.path / "pfts.csv");
    CHECK(csv.rfind("t,t_go,L,M,phi_z,feasible_p1,settling_bound,feasible\n", 0) == 0);
}

TEST_CASE("usage errors exit nonzero") {
    TempDir dir("otalg_cli_err");
    CHECK(run_cli("simulate --no-such-flag") != 0);
    CHECK(run_cli("") != 0);
    // config with an unknown key is a configuration error
    const fs::path cfg = dir.path / "bad.json";
    std::ofstream(cfg) << R"({"scenario": {"guidance": {"l9": 1}}})";
    CHECK(run_cli("simulate --config " + cfg.string() + " --out " + dir.path.string()) == 1);
    // bad law name
    CHECK(run_cli("simulate --law warp --out " + dir.path.string()) == 1);
}
