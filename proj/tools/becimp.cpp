// becimp <scenario> --config FILE [--section.key value ...] --out DIR

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "becimp/config.hpp"
#include "becimp/io.hpp"
#include "becimp/scenarios.hpp"

#ifndef BECIMP_VERSION
#define BECIMP_VERSION "dev"
#endif

using namespace becimp;

namespace {

// Dotted overrides left over by CLI11: "--a.b v" or "--a.b=v".
void apply_overrides(const std::vector<std::string>& extras, KeyValueConfig& kv) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const auto& arg = extras[i];
        if (arg.rfind("--", 0) != 0 || arg.size() < 3)
            throw ConfigError("unexpected argument '" + arg + "'");
        auto key = arg.substr(2);
        std::string value;
        if (auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= extras.size()) throw ConfigError("missing value for --" + key);
            value = extras[++i];
        }
        if (key.find('.') == std::string::npos)
            throw ConfigError("unknown option --" + key + " (overrides use dotted keys)");
        kv.set(key, value);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excited impurity in a 1D trapped condensate: relaxation, quenches, analytics"};
    app.allow_extras();
    app.set_version_flag("--version", BECIMP_VERSION);

    std::string scenario, config_file, out_dir;
    app.add_option("scenario", scenario,
                   "relax | tof | quench | mass_scan | coupling_scan | zeno_decay | analyze")
        ->required();
    app.add_option("--config", config_file, "flat key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.footer("Any config key can be overridden on the command line, e.g. --model.g_IB 80");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    RunConfig cfg;
    try {
        const auto sc = parse_scenario(scenario);
        KeyValueConfig kv = config_file.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_file);
        apply_overrides(app.remaining(), kv);
        if (!out_dir.empty()) kv.set("output.dir", out_dir);
        cfg = make_run_config(sc, kv);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        return run(cfg, std::cerr);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
