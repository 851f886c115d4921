// otalg: terrain-avoiding powered-descent guidance simulator.
//
// Subcommands: simulate | montecarlo | barriers | check-pfts | tfmin.
// Every subcommand writes its data files plus a manifest.json listing each
// emitted file with a checksum, so reruns are verifiable byte-for-byte.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otalg/analysis.hpp"
#include "otalg/config.hpp"
#include "otalg/csv.hpp"
#include "otalg/errors.hpp"
#include "otalg/simulation.hpp"
#include "otalg/version.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string law;
    std::optional<std::uint64_t> seed;
};

std::string default_out_dir() {
    const char* env = std::getenv("OTALG_OUT_DIR");
    return env != nullptr && *env != '\0' ? env : "out";
}

otalg::SimConfig load_config(const CommonOpts& opts) {
    otalg::ParsedConfig parsed;
    if (!opts.config_path.empty()) {
        parsed = otalg::parse_config(opts.config_path);
    } else {
        parsed.config = otalg::default_config();
    }
    for (const auto& w : parsed.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    if (!opts.law.empty()) {
        const auto law = otalg::law_from_name(opts.law);
        if (!law) {
            throw otalg::ConfigError("--law: expected one of ogl, otalg, mss-otalg");
        }
        parsed.config.scenario.law = *law;
    }
    if (opts.seed) {
        parsed.config.scenario.seed = *opts.seed;
        parsed.config.mc.master_seed = *opts.seed;
    }
    return parsed.config;
}

otalg::RunManifest make_manifest(const std::string& command, const otalg::SimConfig& cfg,
                                 std::uint64_t master_seed) {
    otalg::RunManifest m;
    m.tool_version = otalg::kVersion;
    m.command = command;
    m.config_echo = otalg::write_config(cfg);
    m.master_seed = master_seed;
    return m;
}

fs::path prepare_out_dir(const CommonOpts& opts) {
    const fs::path dir = opts.out_dir.empty() ? default_out_dir() : opts.out_dir;
    fs::create_directories(dir);
    return dir;
}

void apply_perturbed_flag(otalg::Environment& env, std::optional<bool> perturbed) {
    if (!perturbed) {
        return;
    }
    env.perturbation.model =
        *perturbed ? otalg::PerturbationModel::Sinusoidal : otalg::PerturbationModel::None;
}

int cmd_simulate(const CommonOpts& opts, std::optional<bool> perturbed) {
    otalg::SimConfig cfg = load_config(opts);
    apply_perturbed_flag(cfg.scenario.env, perturbed);
    const fs::path dir = prepare_out_dir(opts);

    const auto t0 = Clock::now();
    const otalg::TrajectoryLog log = otalg::run_simulation(cfg.scenario);
    const auto events = otalg::detect_divert_events(log);
    const int violations = otalg::count_terrain_violations(log, cfg.scenario.terrain);

    otalg::RunManifest manifest = make_manifest("simulate", cfg, cfg.scenario.seed);
    otalg::save_file(dir, "trajectory.csv", otalg::render_trajectory_csv(log), manifest);
    otalg::save_file(dir, "events.csv", otalg::render_events_csv(events), manifest);
    otalg::save_file(dir, "summary.csv", otalg::render_summary_csv(log, violations), manifest);
    manifest.notes.push_back("status: " + std::string(otalg::run_status_name(log.status)));
    manifest.notes.push_back("terrain_violations: " + std::to_string(violations));
    manifest.notes.push_back("rho_ambiguous_steps: " + std::to_string(log.ambiguous_steps));
    manifest.wall_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    otalg::write_file(dir / "manifest.json", otalg::render_manifest_json(manifest));

    std::printf("%s: dm=%.2f kg dx=%.3g m dy=%.3g m dvz=%.3g m/s t=%.2f s status=%s\n",
                otalg::law_name(log.law), log.summary.dm, log.summary.dx, log.summary.dy,
                log.summary.dvz, log.summary.flight_time, otalg::run_status_name(log.status));
    return log.status == otalg::RunStatus::Ok ? 0 : 2;
}

int cmd_montecarlo(const CommonOpts& opts, std::optional<bool> perturbed,
                   std::optional<int> runs) {
    otalg::SimConfig cfg = load_config(opts);
    apply_perturbed_flag(cfg.scenario.env, perturbed);
    if (runs) {
        cfg.mc.n_runs = *runs;
    }
    const std::uint64_t master_seed = cfg.mc.master_seed.value_or(cfg.scenario.seed);
    std::vector<otalg::GuidanceLaw> laws = cfg.mc.laws;
    if (!opts.law.empty()) {
        laws = {cfg.scenario.law};  // load_config already applied the override
    }
    const fs::path dir = prepare_out_dir(opts);

    const auto t0 = Clock::now();
    otalg::RunManifest manifest = make_manifest("montecarlo", cfg, master_seed);
    std::vector<otalg::LawStats> stats_rows;
    std::vector<double> dm_mss, dm_otalg;
    for (const auto law : laws) {
        otalg::McConfig mc;
        mc.n_runs = cfg.mc.n_runs;
        mc.dispersion = cfg.mc.dispersion;
        mc.base = cfg.scenario;
        mc.base.law = law;
        mc.master_seed = master_seed;
        otalg::McResult res = otalg::run_monte_carlo(mc);

        if (law == otalg::GuidanceLaw::MssOtalg || law == otalg::GuidanceLaw::Otalg) {
            auto& dst = law == otalg::GuidanceLaw::MssOtalg ? dm_mss : dm_otalg;
            for (const auto& r : res.runs) {
                dst.push_back(r.status == otalg::RunStatus::Ok ? r.terminal.dm : -1.0);
            }
        }
        int violations = 0;
        for (const auto& r : res.runs) {
            violations += r.terrain_violations;
        }
        manifest.notes.push_back(std::string(otalg::law_name(law)) +
                                 ": failed=" + std::to_string(res.n_failed) +
                                 " rejected_draws=" + std::to_string(res.rejected_draws) +
                                 " terrain_violations=" + std::to_string(violations));
        otalg::save_file(dir, std::string("runs_") + otalg::law_name(law) + ".csv",
                         otalg::render_runs_csv(law, res.runs), manifest);
        stats_rows.push_back({law, res.stats, res.n_failed});
    }

    // Paired fuel comparison rides on the shared draws and noise streams.
    if (!dm_mss.empty() && dm_mss.size() == dm_otalg.size()) {
        std::vector<double> a, b;
        for (std::size_t i = 0; i < dm_mss.size(); ++i) {
            if (dm_mss[i] >= 0.0 && dm_otalg[i] >= 0.0) {
                a.push_back(dm_mss[i]);
                b.push_back(dm_otalg[i]);
            }
        }
        try {
            const double t_stat = otalg::paired_t_test(a, b);
            for (auto& row : stats_rows) {
                if (row.law == otalg::GuidanceLaw::MssOtalg) {
                    row.stats.fuel_ttest = {t_stat, "dm(mss-otalg)-dm(otalg) paired by run index"};
                }
            }
            manifest.notes.push_back("paired_t_dm_mss_minus_otalg: " + otalg::format_full(t_stat));
        } catch (const otalg::StatsError& e) {
            manifest.notes.push_back(std::string("paired_t_dm: ") + e.what());
        }
    }

    otalg::save_file(dir, "stats.csv", otalg::render_stats_csv(stats_rows), manifest);
    manifest.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    otalg::write_file(dir / "manifest.json", otalg::render_manifest_json(manifest));

    for (const auto& row : stats_rows) {
        std::printf("%s: n=%d failed=%d mean dm=%.2f kg dx=%.3g m dy=%.3g m dvz=%.3g m/s\n",
                    otalg::law_name(row.law), row.stats.n, row.n_failed, row.stats.dm.mean,
                    row.stats.dx.mean, row.stats.dy.mean, row.stats.dvz.mean);
    }
    return 0;
}

int cmd_barriers(const CommonOpts& opts) {
    const otalg::SimConfig cfg = load_config(opts);
    const fs::path dir = prepare_out_dir(opts);
    const auto t0 = Clock::now();
    const otalg::BarrierSet barriers =
        otalg::build_barriers(cfg.scenario.terrain, cfg.scenario.barrier_delta);
    const double z_max = 1.5 * cfg.scenario.terrain.x.back().height_m;

    otalg::RunManifest manifest = make_manifest("barriers", cfg, cfg.scenario.seed);
    otalg::save_file(dir, "barriers.csv", otalg::render_barriers_csv(barriers, z_max, 600),
                     manifest);
    manifest.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    otalg::write_file(dir / "manifest.json", otalg::render_manifest_json(manifest));
    std::printf("barriers sampled on [0, %.1f] m -> %s\n", z_max,
                (dir / "barriers.csv").string().c_str());
    return 0;
}

int cmd_check_pfts(const CommonOpts& opts) {
    const otalg::SimConfig cfg = load_config(opts);
    const fs::path dir = prepare_out_dir(opts);
    const auto t0 = Clock::now();

    const otalg::TrajectoryLog log = otalg::run_simulation(cfg.scenario);
    std::vector<double> phi_z, t_go;
    phi_z.reserve(log.size());
    t_go.reserve(log.size());
    for (std::size_t k = 0; k < log.size(); ++k) {
        phi_z.push_back(log.phi[k].z);
        t_go.push_back(std::max(log.t_f - log.t[k], log.t_go_floor));
    }
    const otalg::GuidanceConfig& gc = cfg.scenario.guidance;
    const double d_star = otalg::critical_distance(gc.l1.z, gc.l2.z);
    const double p_max =
        otalg::divert_rate({0.0, 0.0, d_star}, gc).z;
    const otalg::PftsReport report =
        otalg::pfts_check(phi_z, t_go, p_max, 0.9, gc.t_f, gc.k1, gc.k2, gc.a_p_max);

    int feasible_p1_found = 0;
    for (const auto& row : report.rows) {
        if (row.feasible_p1) {
            ++feasible_p1_found;
        }
    }

    otalg::RunManifest manifest = make_manifest("check-pfts", cfg, cfg.scenario.seed);
    otalg::save_file(dir, "pfts.csv", otalg::render_pfts_csv(report, log.t), manifest);
    manifest.notes.push_back("p_max: " + otalg::format_full(p_max));
    manifest.notes.push_back("samples_with_feasible_p1: " + std::to_string(feasible_p1_found) +
                             "/" + std::to_string(report.rows.size()));
    manifest.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    otalg::write_file(dir / "manifest.json", otalg::render_manifest_json(manifest));

    std::printf("pfts: feasible p1 found at %d/%zu samples (p_max=%.4f, theta=0.9)\n",
                feasible_p1_found, report.rows.size(), p_max);
    return 0;
}

int cmd_tfmin(const CommonOpts& opts) {
    const otalg::SimConfig cfg = load_config(opts);
    const fs::path dir = prepare_out_dir(opts);
    const auto t0 = Clock::now();
    const double tf_min = otalg::t_f_min(cfg.scenario.initial, cfg.scenario.env);
    const double tf = cfg.scenario.guidance.t_f;
    const bool feasible = tf >= tf_min;

    otalg::RunManifest manifest = make_manifest("tfmin", cfg, cfg.scenario.seed);
    std::string csv = "t_f_min_s,t_f_s,feasible\n";
    csv += otalg::format_full(tf_min) + "," + otalg::format_full(tf) + "," +
           (feasible ? "1" : "0") + "\n";
    otalg::save_file(dir, "tfmin.csv", csv, manifest);
    manifest.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    otalg::write_file(dir / "manifest.json", otalg::render_manifest_json(manifest));

    std::printf("t_f_min = %.4f s, configured t_f = %.4f s -> %s\n", tf_min, tf,
                feasible ? "feasible" : "infeasible");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"terrain-avoiding powered-descent guidance simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::optional<bool> perturbed;
    std::optional<int> runs;

    auto add_common = [&](CLI::App* cmd, bool with_law) {
        cmd->add_option("--config", opts.config_path, "JSON config file")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opts.out_dir, "output directory (default $OTALG_OUT_DIR or ./out)");
        cmd->add_option("--seed", opts.seed, "override the scenario/master seed");
        if (with_law) {
            cmd->add_option("--law", opts.law, "guidance law: ogl, otalg, mss-otalg");
        }
    };

    CLI::App* simulate = app.add_subcommand("simulate", "run one closed-loop descent");
    add_common(simulate, true);
    simulate->add_option("--perturbed", perturbed, "enable the sinusoidal disturbance");

    CLI::App* montecarlo = app.add_subcommand("montecarlo", "run a dispersion campaign");
    add_common(montecarlo, true);
    montecarlo->add_option("--perturbed", perturbed, "enable the sinusoidal disturbance");
    montecarlo->add_option("--runs", runs, "number of Monte Carlo runs");

    CLI::App* barriers = app.add_subcommand("barriers", "sample the lateral barriers on a grid");
    add_common(barriers, false);

    CLI::App* pfts = app.add_subcommand("check-pfts", "fixed-time-stability feasibility table");
    add_common(pfts, true);

    CLI::App* tfmin = app.add_subcommand("tfmin", "minimum feasible flight time");
    add_common(tfmin, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(opts, perturbed);
        if (montecarlo->parsed()) return cmd_montecarlo(opts, perturbed, runs);
        if (barriers->parsed()) return cmd_barriers(opts);
        if (pfts->parsed()) return cmd_check_pfts(opts);
        if (tfmin->parsed()) return cmd_tfmin(opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
