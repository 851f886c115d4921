#include "otalg/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "json.hpp"
#include "otalg/errors.hpp"

namespace otalg {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        fail(path, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key: " + path + "." + key);
        }
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        fail(path + "." + key, "expected a number");
    }
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        fail(path + "." + key, "expected an integer");
    }
    return v.get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const char* key,
                      std::uint64_t fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
        fail(path + "." + key, "expected an unsigned integer");
    }
    return v.get<std::uint64_t>();
}

Vec3 get_vec3(const json& obj, const std::string& path, const char* key, const Vec3& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
        fail(path + "." + key, "expected an array of 3 numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

/// Per-axis gain: a scalar broadcasts to all three axes.
Vec3 get_gain3(const json& obj, const std::string& path, const char* key, const Vec3& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    if (v.is_number()) {
        const double s = v.get<double>();
        return {s, s, s};
    }
    return get_vec3(obj, path, key, fallback);
}

NormalSpec get_normal(const json& obj, const std::string& path, const char* key,
                      const NormalSpec& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& v = obj.at(key);
    const std::string p = path + "." + key;
    check_keys(v, p, {"mean", "sd"});
    NormalSpec out;
    out.mean = get_number(v, p, "mean", fallback.mean);
    out.sd = get_number(v, p, "sd", fallback.sd);
    if (out.sd < 0.0) {
        fail(p + ".sd", "standard deviation must be >= 0");
    }
    return out;
}

void require_positive(double x, const std::string& path) {
    if (!(x > 0.0)) {
        fail(path, "must be > 0");
    }
}

void require_positive(const Vec3& v, const std::string& path) {
    if (!(v.x > 0.0 && v.y > 0.0 && v.z > 0.0)) {
        fail(path, "every component must be > 0");
    }
}

void parse_environment(const json& obj, const std::string& path, Environment& env) {
    check_keys(obj, path,
               {"g_mps2", "g_e_mps2", "T_max_N", "I_sp_s", "actuator_tau_s", "thrust_noise_frac",
                "dry_mass_kg", "perturbation"});
    env.g = get_vec3(obj, path, "g_mps2", env.g);
    env.g_e = get_number(obj, path, "g_e_mps2", env.g_e);
    env.T_max = get_number(obj, path, "T_max_N", env.T_max);
    env.I_sp = get_number(obj, path, "I_sp_s", env.I_sp);
    env.actuator_tau = get_number(obj, path, "actuator_tau_s", env.actuator_tau);
    env.thrust_noise_frac = get_number(obj, path, "thrust_noise_frac", env.thrust_noise_frac);
    env.dry_mass = get_number(obj, path, "dry_mass_kg", env.dry_mass);
    require_positive(env.T_max, path + ".T_max_N");
    require_positive(env.I_sp, path + ".I_sp_s");
    require_positive(env.g_e, path + ".g_e_mps2");
    if (env.actuator_tau < 0.0) {
        fail(path + ".actuator_tau_s", "must be >= 0");
    }
    if (env.thrust_noise_frac < 0.0 || env.thrust_noise_frac >= 1.0) {
        fail(path + ".thrust_noise_frac", "must lie in [0, 1)");
    }
    if (env.dry_mass < 0.0) {
        fail(path + ".dry_mass_kg", "must be >= 0");
    }
    if (obj.contains("perturbation")) {
        const json& p = obj.at("perturbation");
        const std::string pp = path + ".perturbation";
        check_keys(p, pp, {"model", "coeff", "period_s"});
        if (p.contains("model")) {
            const std::string model = p.at("model").get<std::string>();
            if (model == "none") {
                env.perturbation.model = PerturbationModel::None;
            } else if (model == "sinusoidal") {
                env.perturbation.model = PerturbationModel::Sinusoidal;
            } else {
                fail(pp + ".model", "expected \"none\" or \"sinusoidal\"");
            }
        }
        env.perturbation.coeff = get_number(p, pp, "coeff", env.perturbation.coeff);
        env.perturbation.period_s = get_number(p, pp, "period_s", env.perturbation.period_s);
        require_positive(env.perturbation.period_s, pp + ".period_s");
    }
}

void parse_terrain(const json& obj, const std::string& path, StepTerrain& terrain,
                   double& delta_m) {
    check_keys(obj, path,
               {"step_heights_m", "step_half_widths_m", "exponents", "final_angle_deg", "delta_m"});
    const bool any = obj.contains("step_heights_m") || obj.contains("step_half_widths_m") ||
                     obj.contains("exponents");
    if (any) {
        if (!obj.contains("step_heights_m") || !obj.contains("step_half_widths_m") ||
            !obj.contains("exponents")) {
            fail(path, "step_heights_m, step_half_widths_m and exponents must be given together");
        }
        const json& h = obj.at("step_heights_m");
        const json& w = obj.at("step_half_widths_m");
        const json& e = obj.at("exponents");
        if (!h.is_array() || !w.is_array() || !e.is_array() || h.size() != w.size() ||
            h.size() != e.size() || h.empty()) {
            fail(path, "step arrays must be equal-length non-empty arrays");
        }
        std::vector<TerrainStep> steps(h.size());
        for (std::size_t j = 0; j < h.size(); ++j) {
            steps[j].height_m = h[j].get<double>();
            steps[j].half_width_m = w[j].get<double>();
            steps[j].exponent = e[j].get<int>();
        }
        terrain = StepTerrain::make_symmetric(std::move(steps), terrain.final_angle_deg);
    }
    terrain.final_angle_deg = get_number(obj, path, "final_angle_deg", terrain.final_angle_deg);
    delta_m = get_number(obj, path, "delta_m", delta_m);
    terrain.validate();
    require_positive(delta_m, path + ".delta_m");
}

void parse_guidance(const json& obj, const std::string& path, GuidanceConfig& gc,
                    std::vector<std::string>& warnings) {
    check_keys(obj, path,
               {"l1", "l2", "l3", "Lambda", "k1", "k2", "a_p_max_mps2", "boundary_layer",
                "r_target_m", "v_target_mps", "t_f_s"});
    gc.l1 = get_gain3(obj, path, "l1", gc.l1);
    gc.l2 = get_gain3(obj, path, "l2", gc.l2);
    gc.l3 = get_gain3(obj, path, "l3", gc.l3);
    gc.lambda_gain = get_number(obj, path, "Lambda", gc.lambda_gain);
    gc.k1 = get_number(obj, path, "k1", gc.k1);
    gc.k2 = get_number(obj, path, "k2", gc.k2);
    gc.a_p_max = get_number(obj, path, "a_p_max_mps2", gc.a_p_max);
    gc.boundary_layer = get_number(obj, path, "boundary_layer", gc.boundary_layer);
    gc.r_target = get_vec3(obj, path, "r_target_m", gc.r_target);
    gc.v_target = get_vec3(obj, path, "v_target_mps", gc.v_target);
    gc.t_f = get_number(obj, path, "t_f_s", gc.t_f);
    require_positive(gc.l1, path + ".l1");
    require_positive(gc.l2, path + ".l2");
    require_positive(gc.l3, path + ".l3");
    require_positive(gc.k1, path + ".k1");
    require_positive(gc.k2, path + ".k2");
    require_positive(gc.a_p_max, path + ".a_p_max_mps2");
    require_positive(gc.boundary_layer, path + ".boundary_layer");
    require_positive(gc.t_f, path + ".t_f_s");
    if (!(gc.lambda_gain > 1.0)) {
        fail(path + ".Lambda", "must be > 1");
    }
    if (gc.lambda_gain != 2.0 && gc.lambda_gain != 3.0) {
        warnings.push_back(path + ".Lambda: values other than 2 or 3 lose the exact cancellation "
                           "in the sliding dynamics");
    }
}

void parse_scenario(const json& obj, Scenario& sc, std::vector<std::string>& warnings) {
    const std::string path = "scenario";
    check_keys(obj, path,
               {"law", "dt_s", "seed", "termination_altitude_m", "t_go_floor_s", "initial",
                "environment", "terrain", "guidance"});
    if (obj.contains("law")) {
        const std::string name = obj.at("law").get<std::string>();
        const auto law = law_from_name(name);
        if (!law) {
            fail(path + ".law", "expected one of \"ogl\", \"otalg\", \"mss-otalg\"");
        }
        sc.law = *law;
    }
    sc.dt = get_number(obj, path, "dt_s", sc.dt);
    sc.seed = get_u64(obj, path, "seed", sc.seed);
    sc.termination_altitude =
        get_number(obj, path, "termination_altitude_m", sc.termination_altitude);
    sc.t_go_floor = get_number(obj, path, "t_go_floor_s", sc.t_go_floor);
    require_positive(sc.dt, path + ".dt_s");
    require_positive(sc.t_go_floor, path + ".t_go_floor_s");
    if (sc.termination_altitude < 0.0) {
        fail(path + ".termination_altitude_m", "must be >= 0");
    }
    if (obj.contains("initial")) {
        const json& init = obj.at("initial");
        const std::string ip = path + ".initial";
        check_keys(init, ip, {"r_m", "v_mps", "m_kg"});
        sc.initial.r = get_vec3(init, ip, "r_m", sc.initial.r);
        sc.initial.v = get_vec3(init, ip, "v_mps", sc.initial.v);
        sc.initial.m = get_number(init, ip, "m_kg", sc.initial.m);
        require_positive(sc.initial.m, ip + ".m_kg");
    }
    if (obj.contains("environment")) {
        parse_environment(obj.at("environment"), path + ".environment", sc.env);
    }
    if (obj.contains("terrain")) {
        parse_terrain(obj.at("terrain"), path + ".terrain", sc.terrain, sc.barrier_delta);
    }
    if (obj.contains("guidance")) {
        parse_guidance(obj.at("guidance"), path + ".guidance", sc.guidance, warnings);
    }
    if (sc.dt > sc.guidance.t_f / 100.0) {
        warnings.push_back("scenario.dt_s: fewer than 100 steps per flight, results will be coarse");
    }
    try {
        const double tf_min = t_f_min(sc.initial, sc.env);
        if (sc.guidance.t_f < tf_min) {
            std::ostringstream os;
            os << "scenario.guidance.t_f_s: " << sc.guidance.t_f
               << " s is below the feasible minimum " << tf_min << " s for this initial state";
            warnings.push_back(os.str());
        }
    } catch (const ConfigError& e) {
        warnings.push_back(std::string("scenario: ") + e.what());
    }
}

void parse_mc(const json& obj, McSettings& mc) {
    const std::string path = "monte_carlo";
    check_keys(obj, path, {"n_runs", "master_seed", "laws", "dispersion"});
    mc.n_runs = get_int(obj, path, "n_runs", mc.n_runs);
    if (mc.n_runs < 2) {
        fail(path + ".n_runs", "must be >= 2");
    }
    if (obj.contains("master_seed")) {
        mc.master_seed = get_u64(obj, path, "master_seed", 0);
    }
    if (obj.contains("laws")) {
        const json& laws = obj.at("laws");
        if (!laws.is_array() || laws.empty()) {
            fail(path + ".laws", "expected a non-empty array of law names");
        }
        mc.laws.clear();
        for (const auto& l : laws) {
            const auto law = law_from_name(l.get<std::string>());
            if (!law) {
                fail(path + ".laws", "expected one of \"ogl\", \"otalg\", \"mss-otalg\"");
            }
            for (const auto existing : mc.laws) {
                if (existing == *law) {
                    fail(path + ".laws", "duplicate law entry");
                }
            }
            mc.laws.push_back(*law);
        }
    }
    if (obj.contains("dispersion")) {
        const json& d = obj.at("dispersion");
        const std::string dp = path + ".dispersion";
        check_keys(d, dp, {"x0_m", "y0_m", "z0_m", "vx0_mps", "vy0_mps", "vz0_mps", "m0_kg"});
        mc.dispersion.x0 = get_normal(d, dp, "x0_m", mc.dispersion.x0);
        mc.dispersion.y0 = get_normal(d, dp, "y0_m", mc.dispersion.y0);
        mc.dispersion.z0 = get_normal(d, dp, "z0_m", mc.dispersion.z0);
        mc.dispersion.vx0 = get_normal(d, dp, "vx0_mps", mc.dispersion.vx0);
        mc.dispersion.vy0 = get_normal(d, dp, "vy0_mps", mc.dispersion.vy0);
        mc.dispersion.vz0 = get_normal(d, dp, "vz0_mps", mc.dispersion.vz0);
        mc.dispersion.m0 = get_normal(d, dp, "m0_kg", mc.dispersion.m0);
    }
}

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json normal_json(const NormalSpec& n) { return json{{"mean", n.mean}, {"sd", n.sd}}; }

}  // namespace

SimConfig default_config() {
    SimConfig cfg;
    Scenario& sc = cfg.scenario;
    sc.initial.r = {1051.86, 562.15, 2459.07};
    sc.initial.v = {-165.0, -26.91, 9.45};
    sc.initial.m = 1905.0;
    sc.terrain = StepTerrain::make_symmetric(
        {{500.0, 600.0, 20}, {1000.0, 1000.0, 6}}, 0.05);
    sc.barrier_delta = 95.5;
    sc.law = GuidanceLaw::MssOtalg;
    return cfg;
}

ParsedConfig parse_config_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ParsedConfig out;
    out.config = default_config();
    check_keys(root, "config", {"scenario", "monte_carlo"});
    if (root.contains("scenario")) {
        parse_scenario(root.at("scenario"), out.config.scenario, out.warnings);
    }
    if (root.contains("monte_carlo")) {
        parse_mc(root.at("monte_carlo"), out.config.mc);
    }
    return out;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string write_config(const SimConfig& cfg) {
    const Scenario& sc = cfg.scenario;
    json terrain;
    {
        json h = json::array();
        json w = json::array();
        json e = json::array();
        for (const auto& s : sc.terrain.x) {
            h.push_back(s.height_m);
            w.push_back(s.half_width_m);
            e.push_back(s.exponent);
        }
        terrain = json{{"step_heights_m", h},
                       {"step_half_widths_m", w},
                       {"exponents", e},
                       {"final_angle_deg", sc.terrain.final_angle_deg},
                       {"delta_m", sc.barrier_delta}};
    }

    json root = {
        {"scenario",
         {{"law", law_name(sc.law)},
          {"dt_s", sc.dt},
          {"seed", sc.seed},
          {"termination_altitude_m", sc.termination_altitude},
          {"t_go_floor_s", sc.t_go_floor},
          {"initial",
           {{"r_m", vec3_json(sc.initial.r)},
            {"v_mps", vec3_json(sc.initial.v)},
            {"m_kg", sc.initial.m}}},
          {"environment",
           {{"g_mps2", vec3_json(sc.env.g)},
            {"g_e_mps2", sc.env.g_e},
            {"T_max_N", sc.env.T_max},
            {"I_sp_s", sc.env.I_sp},
            {"actuator_tau_s", sc.env.actuator_tau},
            {"thrust_noise_frac", sc.env.thrust_noise_frac},
            {"dry_mass_kg", sc.env.dry_mass},
            {"perturbation",
             {{"model",
               sc.env.perturbation.model == PerturbationModel::None ? "none" : "sinusoidal"},
              {"coeff", sc.env.perturbation.coeff},
              {"period_s", sc.env.perturbation.period_s}}}}},
          {"terrain", terrain},
          {"guidance",
           {{"l1", vec3_json(sc.guidance.l1)},
            {"l2", vec3_json(sc.guidance.l2)},
            {"l3", vec3_json(sc.guidance.l3)},
            {"Lambda", sc.guidance.lambda_gain},
            {"k1", sc.guidance.k1},
            {"k2", sc.guidance.k2},
            {"a_p_max_mps2", sc.guidance.a_p_max},
            {"boundary_layer", sc.guidance.boundary_layer},
            {"r_target_m", vec3_json(sc.guidance.r_target)},
            {"v_target_mps", vec3_json(sc.guidance.v_target)},
            {"t_f_s", sc.guidance.t_f}}}}}};

    json mc = {{"n_runs", cfg.mc.n_runs}};
    if (cfg.mc.master_seed) {
        mc["master_seed"] = *cfg.mc.master_seed;
    }
    json laws = json::array();
    for (const auto law : cfg.mc.laws) {
        laws.push_back(law_name(law));
    }
    mc["laws"] = laws;
    mc["dispersion"] = {{"x0_m", normal_json(cfg.mc.dispersion.x0)},
                        {"y0_m", normal_json(cfg.mc.dispersion.y0)},
                        {"z0_m", normal_json(cfg.mc.dispersion.z0)},
                        {"vx0_mps", normal_json(cfg.mc.dispersion.vx0)},
                        {"vy0_mps", normal_json(cfg.mc.dispersion.vy0)},
                        {"vz0_mps", normal_json(cfg.mc.dispersion.vz0)},
                        {"m0_kg", normal_json(cfg.mc.dispersion.m0)}};
    root["monte_carlo"] = mc;

    return root.dump(2) + "\n";
}

}  // namespace otalg
