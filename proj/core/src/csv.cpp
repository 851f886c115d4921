#include "otalg/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "otalg/errors.hpp"

namespace otalg {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string checksum_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

namespace {

void append_vec3(std::string& out, const Vec3& v) {
    out += ',';
    out += format_full(v.x);
    out += ',';
    out += format_full(v.y);
    out += ',';
    out += format_full(v.z);
}

void append_num(std::string& out, double x) {
    out += ',';
    out += format_full(x);
}

}  // namespace

std::string render_trajectory_csv(const TrajectoryLog& log) {
    std::string out =
        "t,rx,ry,rz,vx,vy,vz,m,"
        "acx,acy,acz,aax,aay,aaz,apx,apy,apz,"
        "zemx,zemy,zemz,zevx,zevy,zevz,"
        "px,py,pz,divx,divy,divz,"
        "s1x,s1y,s1z,s2x,s2y,s2z,phix,phiy,phiz,"
        "rho_z,dx,dy,dz,rho_ambiguous\n";
    for (std::size_t k = 0; k < log.size(); ++k) {
        std::string row = format_full(log.t[k]);
        append_vec3(row, log.r[k]);
        append_vec3(row, log.v[k]);
        append_num(row, log.m[k]);
        append_vec3(row, log.a_cmd[k]);
        append_vec3(row, log.a_applied[k]);
        append_vec3(row, log.a_p[k]);
        append_vec3(row, log.zem[k]);
        append_vec3(row, log.zev[k]);
        append_vec3(row, log.p[k]);
        append_vec3(row, log.divert[k]);
        append_vec3(row, log.s1[k]);
        append_vec3(row, log.s2[k]);
        append_vec3(row, log.phi[k]);
        append_num(row, log.rho_z[k]);
        append_vec3(row, log.d[k]);
        row += ',';
        row += log.rho_ambiguous[k] ? '1' : '0';
        row += '\n';
        out += row;
    }
    return out;
}

std::string render_events_csv(const std::vector<DivertEvent>& events) {
    std::string out = "axis,trigger,t_begin,t_end,active_at_termination\n";
    for (const auto& e : events) {
        out += e.axis == Axis::X ? "x" : (e.axis == Axis::Y ? "y" : "z");
        out += ',';
        out += trigger_name(e.trigger);
        out += ',';
        out += format_full(e.t_begin);
        out += ',';
        out += e.t_end ? format_full(*e.t_end) : std::string();
        out += ',';
        out += e.t_end ? '0' : '1';
        out += '\n';
    }
    return out;
}

std::string render_stats_csv(const std::vector<LawStats>& rows) {
    std::string out =
        "law,n_runs,n_failed,"
        "mean_dm_kg,mean_dx_m,mean_dy_m,mean_dvz_mps,"
        "sd_dm_kg,sd_dx_m,sd_dy_m,sd_dvz_mps,"
        "ttest_dm_stat,ttest_dm_pairing\n";
    for (const auto& row : rows) {
        out += law_name(row.law);
        out += ',' + std::to_string(row.stats.n);
        out += ',' + std::to_string(row.n_failed);
        append_num(out, row.stats.dm.mean);
        append_num(out, row.stats.dx.mean);
        append_num(out, row.stats.dy.mean);
        append_num(out, row.stats.dvz.mean);
        append_num(out, row.stats.dm.sd);
        append_num(out, row.stats.dx.sd);
        append_num(out, row.stats.dy.sd);
        append_num(out, row.stats.dvz.sd);
        out += ',';
        out += row.stats.fuel_ttest ? format_full(row.stats.fuel_ttest->statistic) : std::string();
        out += ',';
        out += row.stats.fuel_ttest ? row.stats.fuel_ttest->description : std::string();
        out += '\n';
    }
    return out;
}

std::string render_runs_csv(GuidanceLaw law, const std::vector<RunSummary>& runs) {
    std::string out =
        "run,law,status,x0,y0,z0,vx0,vy0,vz0,m0,"
        "dm_kg,dx_m,dy_m,dvz_mps,flight_time_s,terrain_violations,rho_ambiguous_steps\n";
    for (const auto& r : runs) {
        out += std::to_string(r.index);
        out += ',';
        out += law_name(law);
        out += ',';
        out += run_status_name(r.status);
        append_vec3(out, r.initial.r);
        append_vec3(out, r.initial.v);
        append_num(out, r.initial.m);
        append_num(out, r.terminal.dm);
        append_num(out, r.terminal.dx);
        append_num(out, r.terminal.dy);
        append_num(out, r.terminal.dvz);
        append_num(out, r.terminal.flight_time);
        out += ',' + std::to_string(r.terrain_violations);
        out += ',' + std::to_string(r.ambiguous_steps);
        out += '\n';
    }
    return out;
}

std::string render_summary_csv(const TrajectoryLog& log, int terrain_violations) {
    std::string out =
        "law,status,dm_kg,dx_m,dy_m,dvz_mps,flight_time_s,steps,"
        "terrain_violations,rho_ambiguous_steps\n";
    out += law_name(log.law);
    out += ',';
    out += run_status_name(log.status);
    append_num(out, log.summary.dm);
    append_num(out, log.summary.dx);
    append_num(out, log.summary.dy);
    append_num(out, log.summary.dvz);
    append_num(out, log.summary.flight_time);
    out += ',' + std::to_string(log.size());
    out += ',' + std::to_string(terrain_violations);
    out += ',' + std::to_string(log.ambiguous_steps);
    out += '\n';
    return out;
}

std::string render_barriers_csv(const BarrierSet& barriers, double z_max, int samples) {
    samples = std::max(samples, 2);
    std::string out = "r_z,rho_x_plus,rho_x_minus,rho_y_plus,rho_y_minus\n";
    for (int i = 0; i < samples; ++i) {
        const double r_z = z_max * static_cast<double>(i) / (samples - 1);
        out += format_full(r_z);
        append_num(out, horizontal_barrier(barriers, Axis::X, +1, r_z));
        append_num(out, horizontal_barrier(barriers, Axis::X, -1, r_z));
        append_num(out, horizontal_barrier(barriers, Axis::Y, +1, r_z));
        append_num(out, horizontal_barrier(barriers, Axis::Y, -1, r_z));
        out += '\n';
    }
    return out;
}

std::string render_pfts_csv(const PftsReport& report, std::span<const double> t) {
    std::string out = "t,t_go,L,M,phi_z,feasible_p1,settling_bound,feasible\n";
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const PftsRow& row = report.rows[k];
        out += k < t.size() ? format_full(t[k]) : std::string();
        append_num(out, row.t_go);
        append_num(out, row.L);
        append_num(out, row.M);
        append_num(out, row.phi);
        out += ',';
        out += row.feasible_p1 ? format_full(*row.feasible_p1) : std::string();
        out += ',';
        out += row.settling_bound ? format_full(*row.settling_bound) : std::string();
        out += ',';
        out += row.feasible ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string render_manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& f : manifest.files) {
        files.push_back({{"name", f.name}, {"fnv1a64", f.checksum}});
    }
    nlohmann::ordered_json root = {
        {"tool_version", manifest.tool_version},
        {"command", manifest.command},
        {"master_seed", manifest.master_seed},
        {"files", files},
        {"wall_ms", manifest.wall_ms},
        {"notes", manifest.notes},
        {"config", nlohmann::ordered_json::parse(manifest.config_echo)},
    };
    return root.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

void save_file(const std::filesystem::path& dir, const std::string& name,
               const std::string& content, RunManifest& manifest) {
    write_file(dir / name, content);
    manifest.files.push_back({name, checksum_hex(content)});
}

}  // namespace otalg
