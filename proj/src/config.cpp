#include "hmcf/config.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hmcf/errors.hpp"
#include "hmcf/spectral.hpp"

namespace hmcf {

using nlohmann::json;

json reference_config() {
    json j;
    j["potential"] = {{"kind", "zero-eta"}, {"n", 1},      {"gamma", 0.5},
                      {"kappa", 1.0},       {"p", 1.0},    {"table_path", ""}};
    j["sim"] = {{"M", 64},
                {"T", 1.0},
                {"dt", 0.0},
                {"cfl_safety", 0.25},
                {"rho", std::numbers::pi},
                {"vol0", 0.0},
                {"epsilon", 1.0},
                {"rescaled", false},
                {"sample_every", 1},
                {"initial",
                 {{"generator", "circle"},
                  {"radius", 1.0},
                  {"a", 2.0},
                  {"b", 1.0},
                  {"radial_velocity", 0.0},
                  {"amplitude", 0.0},
                  {"velocity_amplitude", 0.0},
                  {"mode_min", 2},
                  {"mode_max", 6},
                  {"seed", 1},
                  {"data_scale", 1.0},
                  {"drift_vx", 0.0},
                  {"drift_vy", 0.0},
                  {"angular_velocity", 0.0}}}};
    j["experiment"] = {{"kind", "conservation-suite"},
                       {"eps_list", json::array()},
                       {"dt_list", json::array()},
                       {"M_list", json::array()},
                       {"seed", 1},
                       {"s_bar", 2.0},
                       {"s_top", 4.0},
                       {"tolerance", 1e-8},
                       {"max_level", 8}};
    j["output"] = {{"dir", "runs"}};
    return j;
}

namespace {

void collect_unknown(const json& doc, const json& ref, const std::string& prefix,
                     std::vector<std::string>& unknown) {
    if (!doc.is_object()) return;
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!ref.is_object() || !ref.contains(it.key())) {
            unknown.push_back(path);
            continue;
        }
        if (it.value().is_object()) collect_unknown(it.value(), ref.at(it.key()), path, unknown);
    }
}

// Defaults from the reference document, overlaid with the user's values.
json merged_with_defaults(const json& doc, const json& ref) {
    json out = ref;
    out.merge_patch(doc);
    return out;
}

template <typename T>
T get(const json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

PotentialSpec parse_potential(const json& p) {
    const std::string kind = get<std::string>(p, "kind");
    const int n = get<int>(p, "n");
    if (n < 1) throw ConfigError("potential.n must be >= 1");
    if (kind == "zero-eta") {
        PotentialSpec s = PotentialSpec::zero_eta();
        s.dimension = n;
        return s;
    }
    if (kind == "gaussian") return PotentialSpec::gaussian(get<double>(p, "gamma"), n);
    if (kind == "power")
        return PotentialSpec::power_law(get<double>(p, "kappa"), get<double>(p, "p"), n);
    if (kind == "tabulated")
        return PotentialSpec::tabulated_from_csv(get<std::string>(p, "table_path"), n);
    throw ConfigError("potential.kind must be one of zero-eta, gaussian, power, tabulated");
}

} // namespace

RunConfig parse_config(const json& doc) {
    const json ref = reference_config();
    std::vector<std::string> unknown;
    collect_unknown(doc, ref, "", unknown);
    if (!unknown.empty()) {
        std::string msg = "unknown config keys:";
        for (const auto& k : unknown) msg += " " + k;
        throw ConfigError(msg);
    }
    const json full = merged_with_defaults(doc, ref);

    RunConfig rc;
    rc.echo = full;
    rc.sim.potential = parse_potential(full.at("potential"));

    const json& sim = full.at("sim");
    rc.sim.grid_size = get<std::size_t>(sim, "M");
    spectral::check_grid(rc.sim.grid_size);
    rc.sim.horizon = get<double>(sim, "T");
    if (rc.sim.horizon <= 0.0) throw ConfigError("sim.T must be positive");
    rc.sim.dt = get<double>(sim, "dt");
    if (rc.sim.dt < 0.0) throw ConfigError("sim.dt must be nonnegative (0 = CFL)");
    rc.sim.cfl_safety = get<double>(sim, "cfl_safety");
    if (!(rc.sim.cfl_safety > 0.0 && rc.sim.cfl_safety <= 0.6))
        throw ConfigError("sim.cfl_safety must lie in (0, 0.6]");
    rc.sim.rho = get<double>(sim, "rho");
    if (rc.sim.rho <= 0.0) throw ConfigError("sim.rho must be positive");
    rc.sim.vol0 = get<double>(sim, "vol0");
    if (rc.sim.vol0 < 0.0) throw ConfigError("sim.vol0 must be nonnegative (0 = from data)");
    rc.sim.epsilon = get<double>(sim, "epsilon");
    if (!(rc.sim.epsilon > 0.0 && rc.sim.epsilon <= 1.0))
        throw ConfigError("sim.epsilon must lie in (0, 1]");
    rc.sim.rescaled = get<bool>(sim, "rescaled");
    rc.sim.sample_every = get<std::size_t>(sim, "sample_every");
    if (rc.sim.sample_every == 0) throw ConfigError("sim.sample_every must be positive");

    const json& init = sim.at("initial");
    rc.initial.generator = get<std::string>(init, "generator");
    rc.initial.radius = get<double>(init, "radius");
    rc.initial.a = get<double>(init, "a");
    rc.initial.b = get<double>(init, "b");
    rc.initial.radial_velocity = get<double>(init, "radial_velocity");
    rc.initial.amplitude = get<double>(init, "amplitude");
    rc.initial.velocity_amplitude = get<double>(init, "velocity_amplitude");
    rc.initial.mode_min = get<int>(init, "mode_min");
    rc.initial.mode_max = get<int>(init, "mode_max");
    rc.initial.seed = get<unsigned>(init, "seed");
    rc.initial.data_scale = get<double>(init, "data_scale");
    rc.initial.drift_vx = get<double>(init, "drift_vx");
    rc.initial.drift_vy = get<double>(init, "drift_vy");
    rc.initial.angular_velocity = get<double>(init, "angular_velocity");
    if (rc.initial.data_scale <= 0.0) throw ConfigError("initial.data_scale must be positive");

    const json& exp = full.at("experiment");
    rc.experiment.kind = get<std::string>(exp, "kind");
    for (const auto& v : exp.at("eps_list")) rc.experiment.eps_list.push_back(v.get<double>());
    for (const auto& v : exp.at("dt_list")) rc.experiment.dt_list.push_back(v.get<double>());
    for (const auto& v : exp.at("M_list")) rc.experiment.m_list.push_back(v.get<std::size_t>());
    rc.experiment.seed = get<unsigned>(exp, "seed");
    rc.experiment.s_bar = get<double>(exp, "s_bar");
    rc.experiment.s_top = get<double>(exp, "s_top");
    rc.experiment.tolerance = get<double>(exp, "tolerance");
    rc.experiment.max_level = get<int>(exp, "max_level");

    rc.output_dir = get<std::string>(full.at("output"), "dir");
    return rc;
}

json apply_override(json doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like path.to.key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::exception&) {
        parsed = value; // plain string
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dotpos = path.find('.', start);
        const std::string key = path.substr(start, dotpos - start);
        if (key.empty()) throw ConfigError("bad override path: " + path);
        if (dotpos == std::string::npos) {
            (*node)[key] = parsed;
            break;
        }
        node = &(*node)[key];
        start = dotpos + 1;
    }
    return doc;
}

RealField random_band_limited(std::size_t m, int mode_min, int mode_max, unsigned seed) {
    if (mode_min < 1 || mode_max < mode_min || mode_max >= static_cast<int>(m / 2))
        throw ConfigError("band limits must satisfy 1 <= mode_min <= mode_max < M/2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto th = spectral::grid_angles(m);
    RealField f(m, 0.0);
    for (int k = mode_min; k <= mode_max; ++k) {
        const double ak = gauss(rng);
        const double bk = gauss(rng);
        for (std::size_t j = 0; j < m; ++j)
            f[j] += ak * std::cos(k * th[j]) + bk * std::sin(k * th[j]);
    }
    // unit amplitude, so callers' scale factors mean what they say
    double sup = 0.0;
    for (double v : f) sup = std::max(sup, std::fabs(v));
    for (double& v : f) v /= sup;
    return f;
}

PhaseState build_initial_state(const SimConfig& sim, const InitialSpec& init) {
    const std::size_t m = sim.grid_size;
    const auto th = spectral::grid_angles(m);
    VecField pos(m);
    VecField vel(m);

    if (init.generator == "circle" || init.generator == "breathing-circle" ||
        init.generator == "perturbed-circle") {
        if (init.radius <= 0.0) throw ConfigError("initial.radius must be positive");
        for (std::size_t j = 0; j < m; ++j) {
            const Vec2 e{std::cos(th[j]), std::sin(th[j])};
            pos[j] = init.radius * e;
            vel[j] = init.radial_velocity * e;
        }
        if (init.generator == "perturbed-circle") {
            const RealField p = random_band_limited(m, init.mode_min, init.mode_max, init.seed);
            const RealField q =
                random_band_limited(m, init.mode_min, init.mode_max, init.seed + 1);
            for (std::size_t j = 0; j < m; ++j) {
                const Vec2 e{std::cos(th[j]), std::sin(th[j])};
                pos[j] += (init.amplitude * p[j]) * e;
                vel[j] += (init.velocity_amplitude * q[j]) * e;
            }
        }
    } else if (init.generator == "ellipse") {
        if (init.a <= 0.0 || init.b <= 0.0) throw ConfigError("ellipse semi-axes must be positive");
        for (std::size_t j = 0; j < m; ++j)
            pos[j] = {init.a * std::cos(th[j]), init.b * std::sin(th[j])};
    } else {
        throw ConfigError("unknown initial.generator: " + init.generator);
    }

    for (std::size_t j = 0; j < m; ++j) {
        vel[j] += Vec2{init.drift_vx, init.drift_vy};
        vel[j] += init.angular_velocity * Vec2{-pos[j].y, pos[j].x};
        pos[j] *= init.data_scale;
        vel[j] *= init.data_scale;
    }

    GridImmersion F = make_immersion(std::move(pos));
    return make_state(0.0, std::move(F), std::move(vel), ForceModel::from(sim));
}

} // namespace hmcf
