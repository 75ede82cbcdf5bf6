// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors
//
// Experiment runner: each subcommand writes one CSV table to --out (or standard output).

#include "slis/csv.hpp"
#include "slis/errors.hpp"
#include "slis/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace
{
    // sysexits-style codes
    constexpr int exit_usage = 64;
    constexpr int exit_validation = 65;
    constexpr int exit_failure = 70;
    constexpr int exit_io = 74;

    int report(const char *kind, const std::string &message, int code)
    {
        std::string flat = message;
        for (auto &c : flat)
            if (c == '\n' || c == '\r')
                c = ' ';
        std::cerr << "slis: error kind=" << kind << " message=\"" << flat << "\"\n";
        return code;
    }

    struct Command
    {
        CLI::App *app = nullptr;
        slis::Experiment experiment;
        std::map<std::string, std::string> values;
        std::map<std::string, CLI::Option *> options;
        std::string config;
    };

    struct FlagDef
    {
        const char *name;
        const char *help;
    };

    const std::vector<FlagDef> value_flags = {
        {"zk", "terminal distance from the sphere centre [m]"},
        {"r-min", "smallest sphere radius [m]"},
        {"r-max", "largest sphere radius [m]"},
        {"points", "number of radius grid points"},
        {"seed", "64-bit seed"},
        {"sigma", "per-element power noise standard deviation (position-sim)"},
        {"sigma-rss", "cap-power series noise standard deviation (position-sim)"},
        {"series", "number of cap powers in the RSS series (position-sim)"},
        {"threshold-mult", "ring detection threshold in units of sigma (position-sim)"},
        {"elements", "lattice size (position-sim) or active element pairs (reflector-sim)"},
        {"trials", "trials per grid point (position-sim) or random geometries (reflector-sim)"},
        {"planar-radius-scale", "disk radius / sphere radius (default sqrt 2, equal area)"},
        {"rel-tol", "oracle quadrature relative tolerance"},
        {"radius", "sphere radius for reflector-sim and field-map [m]"},
        {"wavelength", "carrier wavelength [m]"},
        {"rx-half-angle", "receive cap half-angle [deg] (reflector-sim)"},
        {"tx-half-angle", "transmit cap half-angle [deg] (reflector-sim)"},
        {"bs", "fixed base-station position x,y,z [m] (reflector-sim)"},
        {"ue", "fixed terminal position x,y,z [m] (reflector-sim)"},
        {"theta-points", "polar grid size (field-map)"},
        {"phi-points", "azimuth grid size (field-map)"},
        {"out", "output CSV path (default: standard output)"},
    };
}

int main(int argc, char **argv)
{
    CLI::App app{"Spherical large intelligent surface experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(slis::library_version()));

    const std::vector<std::pair<slis::Experiment, const char *>> experiments = {
        {slis::Experiment::rss_sweep, "received power of sphere and disk versus sphere radius"},
        {slis::Experiment::gamma_sweep, "sphere-to-disk power ratio versus tau"},
        {slis::Experiment::crlb_sweep, "RSS positioning CRLB factors versus sphere radius"},
        {slis::Experiment::position_sim, "noisy cap-boundary and RSS-series positioning trials"},
        {slis::Experiment::reflector_sim, "phase-compensated reflection over random geometries"},
        {slis::Experiment::field_map, "field power and phase over the visible cap"},
    };

    std::vector<Command> commands(experiments.size());
    for (std::size_t i = 0; i < experiments.size(); ++i)
    {
        auto &cmd = commands[i];
        cmd.experiment = experiments[i].first;
        cmd.app = app.add_subcommand(slis::experiment_name(cmd.experiment), experiments[i].second);
        for (const auto &flag : value_flags)
            cmd.options[flag.name] = cmd.app->add_option(std::string("--") + flag.name, cmd.values[flag.name], flag.help);
        cmd.options["log"] = cmd.app->add_flag("--log", "logarithmic radius spacing");
        cmd.app->add_option("--config", cmd.config, "key=value file; command-line flags take precedence");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return report("usage", e.what(), exit_usage);
    }

    try
    {
        for (auto &cmd : commands)
        {
            if (!cmd.app->parsed())
                continue;
            slis::SweepSpec spec;
            spec.experiment = cmd.experiment;
            if (!cmd.config.empty())
                slis::apply_config_file(spec, cmd.config);
            for (const auto &[name, option] : cmd.options)
            {
                if (option->count() == 0)
                    continue;
                slis::apply_setting(spec, name, name == "log" ? std::string("true") : cmd.values[name]);
            }
            const auto table = slis::run_experiment(spec);
            if (spec.out.empty())
                std::cout << slis::to_csv(table);
            else
                slis::write_csv(table, spec.out);
        }
    }
    catch (const slis::validation_error &e)
    {
        return report(e.kind(), e.what(), exit_validation);
    }
    catch (const slis::io_error &e)
    {
        return report(e.kind(), e.what(), exit_io);
    }
    catch (const slis::error &e)
    {
        return report(e.kind(), e.what(), exit_failure);
    }
    catch (const std::exception &e)
    {
        return report("internal", e.what(), exit_failure);
    }
    return 0;
}
