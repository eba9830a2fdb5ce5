#include "madcap/sweep.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using madcap::RateVector3;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNonCptp = 2;
constexpr int kExitIo = 3;

nlohmann::json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config file: " + path);
    nlohmann::json j;
    is >> j;
    return j;
}

bool flag_given(const CLI::App* cmd, const std::string& flag) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt && opt->count() > 0;
}

// flags win over config values: only fill in options the user did not pass
template <typename T>
void fill_from_config(const CLI::App* cmd, const std::string& flag, const nlohmann::json& cfg,
                      const char* key, T& value) {
    if (!flag_given(cmd, flag) && cfg.contains(key)) {
        value = cfg.at(key).get<T>();
    }
}

int require_cptp(const RateVector3& g) {
    auto rep = madcap::validate_rates(g);
    if (!rep.ok) {
        std::cerr << "non-CPTP rates: " << rep.to_string() << "\n";
        return kExitNonCptp;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-level amplitude damping channels: classification, capacities, sweeps"};
    app.require_subcommand(1);

    std::string config_path;

    double g1 = 0.0, g2 = 0.0, g3 = 0.0;
    double tol = madcap::kDefaultTol;
    std::string quantity = "q";
    std::string plane_spec;
    double step = 0.01;
    std::string out_path;
    int figure_id = 0;

    auto add_rate_flags = [&](CLI::App* cmd) {
        cmd->add_option("--g1", g1, "decay rate 1 -> 0");
        cmd->add_option("--g2", g2, "decay rate 2 -> 1");
        cmd->add_option("--g3", g3, "decay rate 2 -> 0");
        cmd->add_option("--config", config_path, "JSON config; explicit flags win");
    };

    CLI::App* cmd_classify = app.add_subcommand("classify", "degradability classification");
    add_rate_flags(cmd_classify);
    cmd_classify->add_option("--tol", tol, "certificate tolerance");

    CLI::App* cmd_capacity = app.add_subcommand("capacity", "capacity point query");
    add_rate_flags(cmd_capacity);
    cmd_capacity->add_option("--q,-q", quantity, "quantity: q|cp|qe");

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "plane sweep to CSV");
    cmd_sweep->add_option("--plane", plane_spec, "g1=<v>|g2=<v>|g3=<v>|g2+g3=1");
    cmd_sweep->add_option("--step", step, "grid step in (0, 0.5]");
    cmd_sweep->add_option("--q,-q", quantity, "comma-separated subset of q,cp,qe,classify");
    cmd_sweep->add_option("--out", out_path, "output CSV path");
    cmd_sweep->add_option("--tol", tol, "classification tolerance");
    cmd_sweep->add_option("--config", config_path, "JSON config; explicit flags win");

    CLI::App* cmd_figure = app.add_subcommand("figure", "emit the data series of a reference plot");
    cmd_figure->add_option("--id", figure_id, "figure id, 2..10");
    cmd_figure->add_option("--out", out_path, "output directory");
    cmd_figure->add_option("--step", step, "grid step override (0 = default)")->default_val(0.0);
    cmd_figure->add_option("--config", config_path, "JSON config; explicit flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        nlohmann::json cfg = nlohmann::json::object();
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty()) {
            cfg = load_config(config_path);
            if (cfg.contains("g1") || cfg.contains("g2") || cfg.contains("g3") ||
                cfg.contains("rates")) {
                RateVector3 from_cfg = madcap::rates_from_json(cfg.dump());
                if (!flag_given(active, "--g1")) g1 = from_cfg.g1;
                if (!flag_given(active, "--g2")) g2 = from_cfg.g2;
                if (!flag_given(active, "--g3")) g3 = from_cfg.g3;
            }
            fill_from_config(active, "--tol", cfg, "tol", tol);
            fill_from_config(active, "--q", cfg, "q", quantity);
            fill_from_config(active, "--plane", cfg, "plane", plane_spec);
            fill_from_config(active, "--step", cfg, "step", step);
            fill_from_config(active, "--out", cfg, "out", out_path);
            fill_from_config(active, "--id", cfg, "id", figure_id);
        }

        if (cmd_classify->parsed()) {
            RateVector3 g{g1, g2, g3};
            if (int rc = require_cptp(g)) return rc;
            std::cout << madcap::classify_json(g, tol) << "\n";
            return kExitOk;
        }

        if (cmd_capacity->parsed()) {
            RateVector3 g{g1, g2, g3};
            if (int rc = require_cptp(g)) return rc;
            madcap::Quantity q = madcap::parse_quantity(quantity);
            if (q == madcap::Quantity::Classify) {
                std::cerr << "capacity expects --q q|cp|qe\n";
                return kExitUsage;
            }
            std::cout << madcap::capacity_json(g, q) << "\n";
            return kExitOk;
        }

        if (cmd_sweep->parsed()) {
            if (plane_spec.empty() || out_path.empty()) {
                std::cerr << "sweep requires --plane and --out\n" << cmd_sweep->help() << "\n";
                return kExitUsage;
            }
            madcap::SweepConfig config;
            config.plane = madcap::parse_plane(plane_spec);
            config.step = step;
            config.tol = tol;
            config.quantities.clear();
            std::stringstream ss(quantity);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) config.quantities.push_back(madcap::parse_quantity(item));
            }
            if (config.quantities.empty()) {
                std::cerr << "sweep requires at least one quantity\n";
                return kExitUsage;
            }
            config.out_path = out_path;
            auto records = madcap::run_sweep(config);
            std::ofstream os(out_path, std::ios::binary);
            if (!os) {
                std::cerr << "cannot open output file: " << out_path << "\n";
                return kExitIo;
            }
            madcap::write_csv(os, records);
            os.flush();
            if (!os.good()) {
                std::cerr << "write failed: " << out_path << "\n";
                return kExitIo;
            }
            return kExitOk;
        }

        if (cmd_figure->parsed()) {
            if (figure_id < 2 || figure_id > 10) {
                std::cerr << "unknown figure id " << figure_id << " (expected 2..10)\n";
                return kExitUsage;
            }
            if (out_path.empty()) {
                std::cerr << "figure requires --out\n";
                return kExitUsage;
            }
            std::vector<std::string> files;
            try {
                files = madcap::write_figure(figure_id, out_path, step);
            } catch (const std::runtime_error& e) {
                std::cerr << e.what() << "\n";
                return kExitIo;
            }
            nlohmann::json j;
            j["figure"] = figure_id;
            j["files"] = files;
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
