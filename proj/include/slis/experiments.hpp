// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_EXPERIMENTS_HPP
#define SLIS_EXPERIMENTS_HPP

#include "slis/csv.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slis
{
    enum class Experiment
    {
        rss_sweep,
        gamma_sweep,
        crlb_sweep,
        position_sim,
        reflector_sim,
        field_map
    };

    Experiment parse_experiment(const std::string &name);
    std::string experiment_name(Experiment e);

    struct SweepSpec
    {
        Experiment experiment = Experiment::rss_sweep;

        // Sphere radius grid at a fixed terminal distance; defaults span tau in [1.05, 40] at z_k = 4 m.
        double zk = 4.0;
        double r_min = 0.1;
        double r_max = 4.0 / 1.05;
        std::size_t points = 50;
        bool log_spacing = false;

        std::uint64_t seed = 1;
        double planar_radius_scale = 1.4142135623730951;
        double rel_tol = 1e-8; // oracle quadrature tolerance

        // position-sim
        double sigma = 0.0;     // per-element power noise
        double sigma_rss = 0.0; // cap-power series noise
        std::size_t series = 5;
        double threshold_mult = 3.0;

        // position-sim: lattice size (default 20000); reflector-sim: active element pairs (default 1000)
        std::optional<std::size_t> elements;
        std::optional<std::size_t> trials; // position-sim default 100, reflector-sim default 50

        // reflector-sim and field-map
        double radius = 1.0;
        double wavelength = 0.01;
        std::optional<double> rx_half_angle_deg;
        std::optional<double> tx_half_angle_deg;
        std::optional<Eigen::Vector3d> bs_position;
        std::optional<Eigen::Vector3d> ue_position;
        std::size_t theta_points = 46;
        std::size_t phi_points = 72;

        std::string out; // empty: standard output

        std::size_t resolved_elements() const;
        std::size_t resolved_trials() const;
    };

    // Applies one "key=value" setting; keys are the CLI long-flag names without the leading dashes.
    // Throws validation_error on unknown keys or unparsable values.
    void apply_setting(SweepSpec &spec, const std::string &key, const std::string &value);

    // Reads a plain key=value file ('#' comments, blank lines allowed) into spec.
    void apply_config_file(SweepSpec &spec, const std::string &path);

    // Throws validation_error naming the offending flag
    void validate(const SweepSpec &spec);

    std::vector<double> radius_grid(const SweepSpec &spec);

    CsvTable run_rss_sweep(const SweepSpec &spec);
    CsvTable run_gamma_sweep(const SweepSpec &spec);
    CsvTable run_crlb_sweep(const SweepSpec &spec);
    CsvTable run_position_sim(const SweepSpec &spec);
    CsvTable run_reflector_sim(const SweepSpec &spec);
    CsvTable run_field_map(const SweepSpec &spec);

    // Validates, dispatches on spec.experiment and fills the metadata block
    CsvTable run_experiment(const SweepSpec &spec);

    const char *library_version();
}

#endif
