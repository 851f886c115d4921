#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otalg/analysis.hpp"
#include "otalg/simulation.hpp"
#include "otalg/trajectory.hpp"

namespace otalg {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_full(double x);

std::uint64_t fnv1a64(std::string_view bytes);
std::string checksum_hex(std::string_view bytes);

// Renderers produce the full file contents; callers decide where they go.
// All output is a deterministic function of the inputs.

std::string render_trajectory_csv(const TrajectoryLog& log);
std::string render_events_csv(const std::vector<DivertEvent>& events);

struct LawStats {
    GuidanceLaw law = GuidanceLaw::MssOtalg;
    DispersionStats stats;
    int n_failed = 0;
};

std::string render_stats_csv(const std::vector<LawStats>& rows);
std::string render_runs_csv(GuidanceLaw law, const std::vector<RunSummary>& runs);
std::string render_summary_csv(const TrajectoryLog& log, int terrain_violations);
std::string render_barriers_csv(const BarrierSet& barriers, double z_max, int samples);
std::string render_pfts_csv(const PftsReport& report, std::span<const double> t);

/// Provenance record for one CLI invocation; lists every emitted data file
/// with its checksum.
struct ManifestEntry {
    std::string name;
    std::string checksum;
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string config_echo;  // canonical JSON of the effective config
    std::uint64_t master_seed = 0;
    std::vector<ManifestEntry> files;
    double wall_ms = 0.0;
    std::vector<std::string> notes;
};

std::string render_manifest_json(const RunManifest& manifest);

/// Writes content to dir/name and appends its checksum entry to the manifest.
void save_file(const std::filesystem::path& dir, const std::string& name,
               const std::string& content, RunManifest& manifest);

/// Plain write, no manifest bookkeeping (used for the manifest itself).
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace otalg
