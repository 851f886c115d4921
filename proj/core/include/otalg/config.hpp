#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "otalg/simulation.hpp"

namespace otalg {

/// Monte Carlo section of the config file.
struct McSettings {
    int n_runs = 300;
    std::optional<std::uint64_t> master_seed;  // defaults to the scenario seed
    std::vector<GuidanceLaw> laws{GuidanceLaw::MssOtalg, GuidanceLaw::Otalg, GuidanceLaw::Ogl};
    Dispersion dispersion;
};

struct SimConfig {
    Scenario scenario;
    McSettings mc;
};

struct ParsedConfig {
    SimConfig config;
    std::vector<std::string> warnings;
};

/// The built-in nominal scenario and campaign settings; an empty config file
/// parses to exactly this.
SimConfig default_config();

/// Parses and validates a JSON config. Unknown keys and invariant violations
/// raise ConfigError naming the offending key path; soft issues (e.g. t_f
/// below the feasible minimum) come back as warnings.
ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_text(const std::string& text);

/// Canonical JSON form; parse_config_text(write_config(c)) reproduces c.
std::string write_config(const SimConfig& cfg);

}  // namespace otalg
