#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "becimp/analytics.hpp"
#include "becimp/observables.hpp"
#include "becimp/solver.hpp"
#include "becimp/stationary.hpp"

namespace becimp {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` text.  `#` starts a comment; later keys win.
class KeyValueConfig {
public:
    static KeyValueConfig parse(const std::string& text, const std::string& origin = "<string>");
    static KeyValueConfig load(const std::filesystem::path& file);

    void set(const std::string& key, const std::string& value) { entries_[key] = value; }
    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::optional<std::string> raw(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    long get_long(const std::string& key, long def) const;
    bool get_bool(const std::string& key, bool def) const;
    std::optional<double> get_optional_double(const std::string& key) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    /// Sorted `key = value` lines.
    std::string to_text() const;

private:
    std::map<std::string, std::string> entries_;
};

enum class Scenario { Relax, Tof, Quench, MassScan, CouplingScan, ZenoDecay, Analyze };

Scenario parse_scenario(const std::string& name);
std::string to_string(Scenario s);

struct EvolveSpec {
    double t_final = 0.0;
    double dt = 2e-4;
    int snapshot_stride = 250;
    bool zeno = false;
};

struct ZenoSpec {
    double tau_max = 100.0;
    double dtau = 1e-4;
    double even_seed = 0.0;
    bool zeno = false;
    int sample_every = 100;
};

/// Fully resolved run description.  Every field comes from a dotted key;
/// `resolved` holds the complete key set including defaults.
struct RunConfig {
    Scenario scenario = Scenario::Relax;
    int n_points = 2048;
    double half_width = 16.0;
    ModelParams model;
    RelaxOptions relax;
    EvolveSpec evolve;
    double g_after = 0.0;
    std::vector<double> scan_g_IB;
    std::vector<double> scan_alpha;
    int workers = 1;
    ZenoSpec zeno;
    PhysicalParams phys;
    std::string constants = "codata";
    TrackOptions tracking;
    double fringe_time = 10.0;
    bool write_wavefunctions = false;
    std::filesystem::path output_dir;
    KeyValueConfig resolved;
};

/// Every key the loader understands; anything else is a ConfigError.
const std::vector<std::string>& known_config_keys();

/// Validates and resolves `kv` (defaults depend on the scenario).  Throws ConfigError.
RunConfig make_run_config(Scenario scenario, const KeyValueConfig& kv);

}  // namespace becimp
