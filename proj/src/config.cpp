#include "becimp/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace becimp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double to_double(const std::string& key, const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto r = std::from_chars(s.data(), end, v);
    if (r.ec != std::errc{} || r.ptr != end)
        throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
    return v;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& origin) {
    KeyValueConfig kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        kv.entries_[key] = value;
    }
    return kv;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), file.string());
}

std::optional<std::string> KeyValueConfig::raw(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& def) const {
    return raw(key).value_or(def);
}

double KeyValueConfig::get_double(const std::string& key, double def) const {
    auto v = raw(key);
    return v ? to_double(key, *v) : def;
}

long KeyValueConfig::get_long(const std::string& key, long def) const {
    auto v = raw(key);
    if (!v) return def;
    long out = 0;
    const auto* end = v->data() + v->size();
    auto r = std::from_chars(v->data(), end, out);
    if (r.ec != std::errc{} || r.ptr != end) {
        // accept integral values written in floating notation, e.g. 5e6
        const double d = to_double(key, *v);
        if (d != static_cast<double>(static_cast<long>(d)))
            throw ConfigError("key '" + key + "': expected an integer, got '" + *v + "'");
        return static_cast<long>(d);
    }
    return out;
}

bool KeyValueConfig::get_bool(const std::string& key, bool def) const {
    auto v = raw(key);
    if (!v) return def;
    if (*v == "true" || *v == "1" || *v == "on" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "off" || *v == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::optional<double> KeyValueConfig::get_optional_double(const std::string& key) const {
    auto v = raw(key);
    if (!v || v->empty() || *v == "none") return std::nullopt;
    return to_double(key, *v);
}

std::vector<double> KeyValueConfig::get_list(const std::string& key,
                                             const std::vector<double>& def) const {
    auto v = raw(key);
    if (!v) return def;
    std::vector<double> out;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

std::string KeyValueConfig::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
    return out;
}

Scenario parse_scenario(const std::string& name) {
    if (name == "relax") return Scenario::Relax;
    if (name == "tof") return Scenario::Tof;
    if (name == "quench") return Scenario::Quench;
    if (name == "mass_scan") return Scenario::MassScan;
    if (name == "coupling_scan") return Scenario::CouplingScan;
    if (name == "zeno_decay") return Scenario::ZenoDecay;
    if (name == "analyze") return Scenario::Analyze;
    throw ConfigError("unknown scenario '" + name + "'");
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::Relax: return "relax";
        case Scenario::Tof: return "tof";
        case Scenario::Quench: return "quench";
        case Scenario::MassScan: return "mass_scan";
        case Scenario::CouplingScan: return "coupling_scan";
        case Scenario::ZenoDecay: return "zeno_decay";
        case Scenario::Analyze: return "analyze";
    }
    return "?";
}

const std::vector<std::string>& known_config_keys() {
    static const std::vector<std::string> keys = {
        "scenario",
        "grid.n_points", "grid.half_width",
        "model.G_B", "model.g_IB", "model.N_B", "model.N_I", "model.alpha",
        "model.trap_B_on", "model.trap_I_on", "model.G_IB_override", "model.G_BI_override", "model.G_BI_ratio",
        "relax.dtau", "relax.tol", "relax.max_iters", "relax.check_every",
        "evolve.t_final", "evolve.dt", "evolve.snapshot_stride", "evolve.zeno",
        "quench.g_IB_after", "quench.fringe_time",
        "scan.g_IB", "scan.alpha", "scan.workers",
        "zeno.tau_max", "zeno.dtau", "zeno.even_seed", "zeno.enabled", "zeno.sample_every",
        "phys.N_B", "phys.a_B", "phys.a_IB", "phys.omega_r", "phys.omega_z", "phys.omega_Ir",
        "phys.omega_Iz", "phys.m_B", "phys.m_I", "phys.constants",
        "tracking.window_fraction", "tracking.depth_threshold", "tracking.envelope_half_width",
        "tracking.max_gap", "tracking.min_lifetime",
        "output.dir", "output.write_wavefunctions",
    };
    return keys;
}

RunConfig make_run_config(Scenario scenario, const KeyValueConfig& kv) {
    const auto& known = known_config_keys();
    for (const auto& [k, v] : kv.entries())
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw ConfigError("unknown config key '" + k + "'");
    if (auto s = kv.raw("scenario"); s && parse_scenario(*s) != scenario)
        throw ConfigError("config file is for scenario '" + *s + "', not '" +
                          to_string(scenario) + "'");

    RunConfig c;
    c.scenario = scenario;
    auto& r = c.resolved;
    r.set("scenario", to_string(scenario));

    auto num = [&](const std::string& key, double def) {
        const double v = kv.get_double(key, def);
        r.set(key, fmt(v));
        return v;
    };
    auto integer = [&](const std::string& key, long def) {
        const long v = kv.get_long(key, def);
        r.set(key, std::to_string(v));
        return v;
    };
    auto flag = [&](const std::string& key, bool def) {
        const bool v = kv.get_bool(key, def);
        r.set(key, v ? "true" : "false");
        return v;
    };
    auto list = [&](const std::string& key, const std::vector<double>& def) {
        auto v = kv.get_list(key, def);
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
        r.set(key, s);
        return v;
    };

    const bool tof = scenario == Scenario::Tof;
    c.n_points = static_cast<int>(integer("grid.n_points", 2048));
    c.half_width = num("grid.half_width", tof ? 40.0 : 16.0);

    auto& m = c.model;
    m.G_B = num("model.G_B", 4.71);
    m.g_IB = num("model.g_IB", 0.0);
    m.N_B = static_cast<int>(integer("model.N_B", 200));
    m.N_I = static_cast<int>(integer("model.N_I", 1));
    m.alpha = num("model.alpha", 0.808);
    m.trap_B_on = flag("model.trap_B_on", true);
    m.trap_I_on = flag("model.trap_I_on", true);
    m.G_IB_override = kv.get_optional_double("model.G_IB_override");
    m.G_BI_override = kv.get_optional_double("model.G_BI_override");
    m.G_BI_ratio = kv.get_optional_double("model.G_BI_ratio");
    r.set("model.G_IB_override", m.G_IB_override ? fmt(*m.G_IB_override) : "none");
    r.set("model.G_BI_override", m.G_BI_override ? fmt(*m.G_BI_override) : "none");
    r.set("model.G_BI_ratio", m.G_BI_ratio ? fmt(*m.G_BI_ratio) : "none");
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    c.relax.dtau = num("relax.dtau", 1e-4);
    c.relax.tol = num("relax.tol", 1e-10);
    c.relax.max_iters = integer("relax.max_iters", 5'000'000);
    c.relax.check_every = static_cast<int>(integer("relax.check_every", 100));

    const double t_final_default = tof ? 3.0 : 30.0;
    c.evolve.t_final = num("evolve.t_final", t_final_default);
    c.evolve.dt = num("evolve.dt", 2e-4);
    c.evolve.snapshot_stride = static_cast<int>(integer("evolve.snapshot_stride", 250));
    c.evolve.zeno = flag("evolve.zeno", false);

    c.g_after = num("quench.g_IB_after", 0.0);
    c.fringe_time = num("quench.fringe_time", 10.0);
    c.scan_g_IB = list("scan.g_IB", {});
    c.scan_alpha = list("scan.alpha", {});
    c.workers = static_cast<int>(integer("scan.workers", 1));

    c.zeno.tau_max = num("zeno.tau_max", 100.0);
    c.zeno.dtau = num("zeno.dtau", 1e-4);
    c.zeno.even_seed = num("zeno.even_seed", 0.0);
    c.zeno.zeno = flag("zeno.enabled", false);
    c.zeno.sample_every = static_cast<int>(integer("zeno.sample_every", 100));

    auto& p = c.phys;
    p.N_B = static_cast<int>(integer("phys.N_B", p.N_B));
    p.a_B = num("phys.a_B", p.a_B);
    p.a_IB = num("phys.a_IB", p.a_IB);
    p.omega_r = num("phys.omega_r", p.omega_r);
    p.omega_z = num("phys.omega_z", p.omega_z);
    p.omega_Ir = num("phys.omega_Ir", p.omega_Ir);
    p.omega_Iz = num("phys.omega_Iz", p.omega_Iz);
    p.m_B = num("phys.m_B", p.m_B);
    p.m_I = num("phys.m_I", p.m_I);
    c.constants = kv.get_string("phys.constants", "codata");
    if (c.constants != "codata" && c.constants != "rounded_hbar")
        throw ConfigError("phys.constants must be 'codata' or 'rounded_hbar'");
    r.set("phys.constants", c.constants);

    auto& t = c.tracking;
    t.window_fraction = num("tracking.window_fraction", t.window_fraction);
    t.depth_threshold = num("tracking.depth_threshold", t.depth_threshold);
    t.envelope_half_width = num("tracking.envelope_half_width", t.envelope_half_width);
    t.max_gap = static_cast<int>(integer("tracking.max_gap", t.max_gap));
    t.min_lifetime = num("tracking.min_lifetime", t.min_lifetime);

    c.write_wavefunctions = flag("output.write_wavefunctions", false);
    c.output_dir = kv.get_string("output.dir", "");
    if (c.output_dir.empty()) throw ConfigError("no output directory given (--out)");
    r.set("output.dir", c.output_dir.string());

    // structural checks
    if (c.n_points < 8 || c.n_points % 2) throw ConfigError("grid.n_points must be even and >= 8");
    if (!(c.half_width > 0)) throw ConfigError("grid.half_width must be positive");
    if (!(c.relax.dtau > 0) || !(c.relax.tol > 0) || c.relax.max_iters < 1 || c.relax.check_every < 1)
        throw ConfigError("relax.* values must be positive");
    if (!(c.evolve.dt > 0) || c.evolve.snapshot_stride < 1 || !(c.evolve.t_final > 0))
        throw ConfigError("evolve.* values must be positive");
    if (c.workers < 1) throw ConfigError("scan.workers must be >= 1");
    if (scenario == Scenario::CouplingScan && c.scan_g_IB.empty())
        throw ConfigError("coupling_scan needs scan.g_IB");
    if (scenario == Scenario::MassScan && c.scan_alpha.empty())
        throw ConfigError("mass_scan needs scan.alpha");
    for (double a : c.scan_alpha)
        if (!(a > 0)) throw ConfigError("scan.alpha values must be positive");
    if (!(c.zeno.tau_max > 0) || !(c.zeno.dtau > 0) || c.zeno.sample_every < 1)
        throw ConfigError("zeno.* values must be positive");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

}  // namespace becimp
