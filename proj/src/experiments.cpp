// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/experiments.hpp"
#include "slis/errors.hpp"
#include "slis/geometry.hpp"
#include "slis/positioning.hpp"
#include "slis/quadrature.hpp"
#include "slis/random.hpp"
#include "slis/reflector.hpp"
#include "slis/rss.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#ifndef SLIS_VERSION
#define SLIS_VERSION "0.0.0"
#endif

namespace slis
{
    namespace
    {
        constexpr double deg = pi / 180.0;

        std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

        double parse_double(const std::string &key, const std::string &value)
        {
            double out = 0.0;
            const auto *first = value.data();
            const auto *last = value.data() + value.size();
            const auto [ptr, ec] = std::from_chars(first, last, out);
            if (ec != std::errc() || ptr != last)
                throw validation_error(fmt::format("--{}: '{}' is not a number", key, value));
            return out;
        }

        std::uint64_t parse_unsigned(const std::string &key, const std::string &value)
        {
            std::uint64_t out = 0;
            const auto *first = value.data();
            const auto *last = value.data() + value.size();
            const auto [ptr, ec] = std::from_chars(first, last, out);
            if (ec != std::errc() || ptr != last)
                throw validation_error(fmt::format("--{}: '{}' is not a non-negative integer", key, value));
            return out;
        }

        bool parse_bool(const std::string &key, const std::string &value)
        {
            if (value == "true" || value == "1" || value == "yes" || value == "on")
                return true;
            if (value == "false" || value == "0" || value == "no" || value == "off")
                return false;
            throw validation_error(fmt::format("--{}: '{}' is not a boolean", key, value));
        }

        Eigen::Vector3d parse_vector(const std::string &key, const std::string &value)
        {
            Eigen::Vector3d v;
            std::size_t start = 0;
            for (int i = 0; i < 3; ++i)
            {
                const auto comma = value.find(',', start);
                if ((i < 2) == (comma == std::string::npos))
                    throw validation_error(fmt::format("--{}: expected x,y,z but got '{}'", key, value));
                v[i] = parse_double(key, value.substr(start, comma == std::string::npos ? comma : comma - start));
                start = comma + 1;
            }
            return v;
        }

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        [[noreturn]] void invalid(const std::string &flag, const std::string &what)
        {
            throw validation_error(fmt::format("--{}: {}", flag, what));
        }

        bool uses_radius_grid(Experiment e)
        {
            return e == Experiment::rss_sweep || e == Experiment::gamma_sweep || e == Experiment::crlb_sweep ||
                   e == Experiment::position_sim;
        }

        QuadratureSpec oracle_quadrature(const SweepSpec &spec)
        {
            auto q = QuadratureSpec::adaptive(spec.rel_tol, 1e-300);
            q.max_evals = 200'000'000;
            return q;
        }

        std::optional<double> half_angle_rad(const std::optional<double> &deg_value)
        {
            if (!deg_value)
                return std::nullopt;
            return *deg_value * deg;
        }

        std::vector<std::pair<std::string, std::string>> spec_metadata(const SweepSpec &spec)
        {
            std::vector<std::pair<std::string, std::string>> m;
            m.emplace_back("slis-version", library_version());
            m.emplace_back("experiment", experiment_name(spec.experiment));
            m.emplace_back("zk", fmt_double(spec.zk));
            if (uses_radius_grid(spec.experiment))
            {
                m.emplace_back("r-min", fmt_double(spec.r_min));
                m.emplace_back("r-max", fmt_double(spec.r_max));
                m.emplace_back("points", std::to_string(spec.points));
                m.emplace_back("log", spec.log_spacing ? "true" : "false");
            }
            m.emplace_back("seed", std::to_string(spec.seed));
            switch (spec.experiment)
            {
            case Experiment::rss_sweep:
            case Experiment::gamma_sweep:
                m.emplace_back("planar-radius-scale", fmt_double(spec.planar_radius_scale));
                m.emplace_back("rel-tol", fmt_double(spec.rel_tol));
                break;
            case Experiment::crlb_sweep:
                break;
            case Experiment::position_sim:
                m.emplace_back("sigma", fmt_double(spec.sigma));
                m.emplace_back("sigma-rss", fmt_double(spec.sigma_rss));
                m.emplace_back("series", std::to_string(spec.series));
                m.emplace_back("threshold-mult", fmt_double(spec.threshold_mult));
                m.emplace_back("elements", std::to_string(spec.resolved_elements()));
                m.emplace_back("trials", std::to_string(spec.resolved_trials()));
                break;
            case Experiment::reflector_sim:
                m.emplace_back("radius", fmt_double(spec.radius));
                m.emplace_back("wavelength", fmt_double(spec.wavelength));
                m.emplace_back("elements", std::to_string(spec.resolved_elements()));
                m.emplace_back("trials", std::to_string(spec.resolved_trials()));
                m.emplace_back("rx-half-angle",
                               spec.rx_half_angle_deg ? fmt_double(*spec.rx_half_angle_deg) : "default");
                m.emplace_back("tx-half-angle",
                               spec.tx_half_angle_deg ? fmt_double(*spec.tx_half_angle_deg) : "default");
                if (spec.bs_position)
                    m.emplace_back("bs", fmt::format("{:.17g},{:.17g},{:.17g}", spec.bs_position->x(),
                                                     spec.bs_position->y(), spec.bs_position->z()));
                if (spec.ue_position)
                    m.emplace_back("ue", fmt::format("{:.17g},{:.17g},{:.17g}", spec.ue_position->x(),
                                                     spec.ue_position->y(), spec.ue_position->z()));
                break;
            case Experiment::field_map:
                m.emplace_back("radius", fmt_double(spec.radius));
                m.emplace_back("wavelength", fmt_double(spec.wavelength));
                m.emplace_back("theta-points", std::to_string(spec.theta_points));
                m.emplace_back("phi-points", std::to_string(spec.phi_points));
                break;
            }
            return m;
        }

        Eigen::Vector3d random_direction(Rng &rng)
        {
            for (;;)
            {
                const Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
                const double n = v.norm();
                if (n > 1e-12)
                    return v / n;
            }
        }
    }

    const char *library_version() { return SLIS_VERSION; }

    Experiment parse_experiment(const std::string &name)
    {
        if (name == "rss-sweep")
            return Experiment::rss_sweep;
        if (name == "gamma-sweep")
            return Experiment::gamma_sweep;
        if (name == "crlb-sweep")
            return Experiment::crlb_sweep;
        if (name == "position-sim")
            return Experiment::position_sim;
        if (name == "reflector-sim")
            return Experiment::reflector_sim;
        if (name == "field-map")
            return Experiment::field_map;
        throw validation_error("unknown experiment '" + name + "'");
    }

    std::string experiment_name(Experiment e)
    {
        switch (e)
        {
        case Experiment::rss_sweep: return "rss-sweep";
        case Experiment::gamma_sweep: return "gamma-sweep";
        case Experiment::crlb_sweep: return "crlb-sweep";
        case Experiment::position_sim: return "position-sim";
        case Experiment::reflector_sim: return "reflector-sim";
        case Experiment::field_map: return "field-map";
        }
        return "unknown";
    }

    std::size_t SweepSpec::resolved_elements() const
    {
        if (elements)
            return *elements;
        return experiment == Experiment::reflector_sim ? 1000 : 20000;
    }

    std::size_t SweepSpec::resolved_trials() const
    {
        if (trials)
            return *trials;
        return experiment == Experiment::reflector_sim ? 50 : 100;
    }

    void apply_setting(SweepSpec &spec, const std::string &key, const std::string &raw)
    {
        const std::string value = trim(raw);
        if (key == "zk")
            spec.zk = parse_double(key, value);
        else if (key == "r-min")
            spec.r_min = parse_double(key, value);
        else if (key == "r-max")
            spec.r_max = parse_double(key, value);
        else if (key == "points")
            spec.points = parse_unsigned(key, value);
        else if (key == "log")
            spec.log_spacing = parse_bool(key, value);
        else if (key == "seed")
            spec.seed = parse_unsigned(key, value);
        else if (key == "planar-radius-scale")
            spec.planar_radius_scale = parse_double(key, value);
        else if (key == "rel-tol")
            spec.rel_tol = parse_double(key, value);
        else if (key == "sigma")
            spec.sigma = parse_double(key, value);
        else if (key == "sigma-rss")
            spec.sigma_rss = parse_double(key, value);
        else if (key == "series")
            spec.series = parse_unsigned(key, value);
        else if (key == "threshold-mult")
            spec.threshold_mult = parse_double(key, value);
        else if (key == "elements")
            spec.elements = parse_unsigned(key, value);
        else if (key == "trials")
            spec.trials = parse_unsigned(key, value);
        else if (key == "radius")
            spec.radius = parse_double(key, value);
        else if (key == "wavelength")
            spec.wavelength = parse_double(key, value);
        else if (key == "rx-half-angle")
            spec.rx_half_angle_deg = parse_double(key, value);
        else if (key == "tx-half-angle")
            spec.tx_half_angle_deg = parse_double(key, value);
        else if (key == "bs")
            spec.bs_position = parse_vector(key, value);
        else if (key == "ue")
            spec.ue_position = parse_vector(key, value);
        else if (key == "theta-points")
            spec.theta_points = parse_unsigned(key, value);
        else if (key == "phi-points")
            spec.phi_points = parse_unsigned(key, value);
        else if (key == "out")
            spec.out = value;
        else
            throw validation_error("unknown setting '" + key + "'");
    }

    void apply_config_file(SweepSpec &spec, const std::string &path)
    {
        std::ifstream file(path);
        if (!file)
            throw io_error("cannot open config file " + path);
        std::string line;
        for (int number = 1; std::getline(file, line); ++number)
        {
            const std::string t = trim(line);
            if (t.empty() || t.front() == '#')
                continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw validation_error(fmt::format("{}:{}: expected key=value", path, number));
            try
            {
                apply_setting(spec, trim(t.substr(0, eq)), t.substr(eq + 1));
            }
            catch (const validation_error &e)
            {
                throw validation_error(fmt::format("{}:{}: {}", path, number, e.what()));
            }
        }
    }

    void validate(const SweepSpec &spec)
    {
        if (!(spec.zk > 0.0) || !std::isfinite(spec.zk))
            invalid("zk", "must be positive and finite");

        if (uses_radius_grid(spec.experiment))
        {
            if (!(spec.r_min > 0.0) || !std::isfinite(spec.r_min))
                invalid("r-min", "must be positive and finite");
            if (!(spec.r_max > 0.0) || !std::isfinite(spec.r_max))
                invalid("r-max", "must be positive and finite");
            if (spec.points == 0)
                invalid("points", "empty range (0 points)");
            if (spec.points == 1 && spec.r_min != spec.r_max)
                invalid("points", "a single-point sweep needs r-min equal to r-max");
            if (spec.points >= 2 && !(spec.r_min < spec.r_max))
                invalid("r-min", "empty range: r-min must be below r-max");
            const double tau_min = spec.zk / spec.r_max;
            if (spec.experiment == Experiment::crlb_sweep)
            {
                if (tau_min < 1.0)
                    invalid("r-max", "zk / r-max must be >= 1 (terminal outside the sphere)");
            }
            else if (!(tau_min > 1.0))
                invalid("r-max", "zk / r-max must exceed 1 (terminal strictly outside the sphere)");
        }

        switch (spec.experiment)
        {
        case Experiment::rss_sweep:
        case Experiment::gamma_sweep:
            if (!(spec.planar_radius_scale > 0.0) || !std::isfinite(spec.planar_radius_scale))
                invalid("planar-radius-scale", "must be positive");
            if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0))
                invalid("rel-tol", "must lie in (0, 1)");
            break;
        case Experiment::crlb_sweep:
            break;
        case Experiment::position_sim:
            if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma))
                invalid("sigma", "must be non-negative");
            if (!(spec.sigma_rss >= 0.0) || !std::isfinite(spec.sigma_rss))
                invalid("sigma-rss", "must be non-negative");
            if (spec.series < 1)
                invalid("series", "needs at least one measurement");
            if (!(spec.threshold_mult >= 0.0))
                invalid("threshold-mult", "must be non-negative");
            if (spec.resolved_elements() < 100)
                invalid("elements", "angle simulation needs at least 100 elements");
            if (spec.resolved_trials() < 1)
                invalid("trials", "must be at least 1");
            break;
        case Experiment::reflector_sim:
            if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
                invalid("radius", "must be positive and finite");
            if (!(spec.wavelength > 0.0))
                invalid("wavelength", "must be positive");
            if (spec.resolved_elements() < 1)
                invalid("elements", "must be at least 1");
            if (spec.resolved_trials() < 1)
                invalid("trials", "must be at least 1");
            for (const auto &[flag, angle] : {std::pair{"rx-half-angle", spec.rx_half_angle_deg},
                                              std::pair{"tx-half-angle", spec.tx_half_angle_deg}})
                if (angle && !(*angle > 0.0 && *angle <= 90.0))
                    invalid(flag, "must lie in (0, 90] degrees");
            if (spec.bs_position.has_value() != spec.ue_position.has_value())
                invalid(spec.bs_position ? "ue" : "bs", "bs and ue must be given together");
            if (spec.bs_position && !(spec.bs_position->norm() > spec.radius))
                invalid("bs", "base station must lie outside the sphere");
            if (spec.ue_position && !(spec.ue_position->norm() > spec.radius))
                invalid("ue", "terminal must lie outside the sphere");
            if (spec.rx_half_angle_deg && spec.tx_half_angle_deg && spec.bs_position)
            {
                const double separation = std::atan2(spec.bs_position->cross(*spec.ue_position).norm(),
                                                     spec.bs_position->dot(*spec.ue_position));
                if ((*spec.rx_half_angle_deg + *spec.tx_half_angle_deg) * deg >= separation)
                    invalid("rx-half-angle", "receive and transmit caps overlap");
            }
            break;
        case Experiment::field_map:
            if (!(spec.radius > 0.0) || !std::isfinite(spec.radius))
                invalid("radius", "must be positive and finite");
            if (!(spec.zk / spec.radius > 1.0))
                invalid("zk", "zk / radius must exceed 1");
            if (!(spec.wavelength > 0.0))
                invalid("wavelength", "must be positive");
            if (spec.theta_points < 2)
                invalid("theta-points", "must be at least 2");
            if (spec.phi_points < 1)
                invalid("phi-points", "must be at least 1");
            break;
        }
    }

    std::vector<double> radius_grid(const SweepSpec &spec)
    {
        if (spec.points == 1)
            return {spec.r_min};
        std::vector<double> grid(spec.points);
        const double last = static_cast<double>(spec.points - 1);
        for (std::size_t i = 0; i < spec.points; ++i)
        {
            const double t = static_cast<double>(i) / last;
            grid[i] = spec.log_spacing ? std::exp(std::log(spec.r_min) + t * (std::log(spec.r_max) - std::log(spec.r_min)))
                                       : spec.r_min + t * (spec.r_max - spec.r_min);
        }
        grid.front() = spec.r_min;
        grid.back() = spec.r_max;
        return grid;
    }

    CsvTable run_rss_sweep(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"R", "tau", "P_sp_closed", "P_sp_oracle", "P_pl_approx_avg", "P_pl_exact_avg",
                         "rel_gap_approx"};
        const auto q = oracle_quadrature(spec);
        for (const double R : radius_grid(spec))
        {
            const double tau = spec.zk / R;
            const double sp_closed = rss_sphere_full(tau);
            const double sp_oracle =
                integrate_sphere_power(tau, visibility_angle(tau), LisGeometry::sphere(R), q).value;
            const double disk_radius = spec.planar_radius_scale * R;
            const double disk_tau = spec.zk / disk_radius;
            // mean of cos(theta) over [0, pi/2) is 2/pi
            const double pl_approx = 2.0 / pi * rss_disk_approx(disk_tau, 0.0);
            const double pl_exact = integrate_disk_power_elevation_average(disk_tau, disk_radius, q).value;
            table.add_row({R, tau, sp_closed, sp_oracle, pl_approx, pl_exact, std::abs(pl_approx - pl_exact) / pl_exact});
        }
        return table;
    }

    CsvTable run_gamma_sweep(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"R", "tau", "gamma_closed", "gamma_numeric"};
        const auto q = oracle_quadrature(spec);
        double last_tau = 0.0, last_gamma = 0.0;
        for (const double R : radius_grid(spec))
        {
            const double tau = spec.zk / R;
            const double closed = gamma_ratio(tau, spec.planar_radius_scale);
            const double sp = integrate_sphere_power(tau, visibility_angle(tau), LisGeometry::sphere(R), q).value;
            const double disk_radius = spec.planar_radius_scale * R;
            const double pl = integrate_disk_power_elevation_average(spec.zk / disk_radius, disk_radius, q).value;
            const double numeric = sp / pl;
            table.add_row({R, tau, closed, numeric});
            if (tau > last_tau)
                last_tau = tau, last_gamma = closed;
        }
        const double s2 = spec.planar_radius_scale * spec.planar_radius_scale;
        table.footer.push_back(fmt::format("gamma_closed at largest tau {:.17g}: {:.17g}", last_tau, last_gamma));
        table.footer.push_back(fmt::format("asymptote tau->inf for this planar-radius-scale: pi/(2 s^2) = {:.17g}",
                                           pi / (2.0 * s2)));
        table.footer.push_back(fmt::format("asymptote tau->inf, equal-area disk (s=sqrt2): pi/4 = {:.17g}", pi / 4.0));
        table.footer.push_back(fmt::format("asymptote tau->inf, equal-radius disk (s=1): pi/2 = {:.17g}", pi / 2.0));
        table.footer.push_back(fmt::format("limit tau->1, equal-area disk: sqrt3*pi/(2(sqrt3-1)) = {:.17g}",
                                           gamma_near_surface));
        return table;
    }

    CsvTable run_crlb_sweep(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"R", "tau", "crlb_sp_factor", "crlb_pl_factor", "slope_sp", "slope_pl"};
        for (const double R : radius_grid(spec))
        {
            const double tau = spec.zk / R;
            const double t2 = tau * tau;
            // d ln(factor) / d ln(R) = -d ln(factor) / d ln(tau)
            const double slope_sp = tau == 1.0 ? -std::numeric_limits<double>::infinity()
                                               : -(4.0 + 2.0 * t2 / ((tau - 1.0) * (tau + 1.0)));
            const double slope_pl = -6.0 * t2 / (t2 + 1.0);
            table.add_row({R, tau, crlb_sphere(tau).factor, crlb_plane(tau).factor, slope_sp, slope_pl});
        }
        return table;
    }

    CsvTable run_position_sim(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"kind",  "R",          "tau",       "trial",      "theta0_hat",
                         "z_hat", "tau_hat_series", "z_sq_err", "tau_sq_err", "crlb_tau"};
        const auto grid = radius_grid(spec);
        const std::size_t trials = spec.resolved_trials();
        const AngleNoise noise{spec.sigma, spec.resolved_elements(), spec.threshold_mult};

        for (std::size_t row = 0; row < grid.size(); ++row)
        {
            const double R = grid[row];
            const double tau = spec.zk / R;
            const double theta0 = visibility_angle(tau);
            std::vector<double> true_ladder;
            for (std::size_t n = 1; n <= spec.series; ++n)
                true_ladder.push_back(theta0 / static_cast<double>(n));
            const double crlb = spec.sigma_rss > 0.0 ? crlb_series(tau, true_ladder, spec.sigma_rss) : 0.0;

            double sum_theta = 0.0, sum_z = 0.0, sum_tau = 0.0, sse_z = 0.0, sse_tau = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
            {
                const auto m = simulate_angle_measurement(tau, R, noise, derive_seed(spec.seed, {row, t, 0}));
                const double z_hat = estimate_z_from_angle(m, R);

                auto series = RssSeries::ladder(m.theta0_hat, spec.series, spec.sigma_rss);
                Rng rng(derive_seed(spec.seed, {row, t, 1}));
                for (auto &s : series.samples)
                    s.power = received_cap_power(tau, s.theta) + spec.sigma_rss * rng.normal();
                const double tau_hat = estimate_tau_from_rss_series(series);

                const double z_err = (z_hat - spec.zk) * (z_hat - spec.zk);
                const double tau_err = (tau_hat - tau) * (tau_hat - tau);
                table.add_row({std::string("trial"), R, tau, static_cast<std::int64_t>(t), m.theta0_hat, z_hat,
                               tau_hat, z_err, tau_err, crlb});
                sum_theta += m.theta0_hat;
                sum_z += z_hat;
                sum_tau += tau_hat;
                sse_z += z_err;
                sse_tau += tau_err;
            }
            const double n = static_cast<double>(trials);
            table.add_row({std::string("summary"), R, tau, static_cast<std::int64_t>(trials), sum_theta / n, sum_z / n,
                           sum_tau / n, sse_z / n, sse_tau / n, crlb});
        }
        table.footer.push_back("summary rows: trial = trial count, estimates are means, *_sq_err are mean squared errors");
        return table;
    }

    CsvTable run_reflector_sim(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"kind",       "trial",        "elements_total", "N",          "tau_bs",     "tau_ue",
                         "separation", "compensated", "uncompensated", "incoherent", "ratio"};
        const RadioConfig radio = RadioConfig::from_wavelength(spec.wavelength);
        const std::size_t active = spec.resolved_elements();
        const std::size_t trials = spec.resolved_trials();
        const auto rx = half_angle_rad(spec.rx_half_angle_deg);
        const auto tx = half_angle_rad(spec.tx_half_angle_deg);

        double sum_c = 0.0, sum_u = 0.0, sum_total = 0.0;
        for (std::size_t t = 0; t < trials; ++t)
        {
            Eigen::Vector3d bs, ue;
            if (spec.bs_position)
            {
                bs = *spec.bs_position;
                ue = *spec.ue_position;
            }
            else
            {
                // Random directions at least 1 rad apart, distances 2R..10R
                Rng rng(derive_seed(spec.seed, {t}));
                Eigen::Vector3d d_bs, d_ue;
                do
                {
                    d_bs = random_direction(rng);
                    d_ue = random_direction(rng);
                } while (std::atan2(d_bs.cross(d_ue).norm(), d_bs.dot(d_ue)) < 1.0);
                bs = spec.radius * (2.0 + 8.0 * rng.uniform()) * d_bs;
                ue = spec.radius * (2.0 + 8.0 * rng.uniform()) * d_ue;
            }
            const TerminalPose bs_pose(bs), ue_pose(ue);
            const auto layout = make_reflector_layout_with_active(spec.radius, active, bs_pose, ue_pose, rx, tx);
            const double c = evaluate_reflected_power(layout, design_phase_profile(layout, bs_pose, ue_pose, radio),
                                                      bs_pose, ue_pose, radio);
            const double u = evaluate_reflected_power(layout, zero_phase_profile(layout), bs_pose, ue_pose, radio);
            const double incoherent = incoherent_reference_power(layout, bs_pose, ue_pose);
            const double separation = std::atan2(bs.cross(ue).norm(), bs.dot(ue));
            table.add_row({std::string("trial"), static_cast<std::int64_t>(t),
                           static_cast<std::int64_t>(layout.elements.size()),
                           static_cast<std::int64_t>(layout.active_count()), bs.norm() / spec.radius,
                           ue.norm() / spec.radius, separation, c, u, incoherent, c / u});
            sum_c += c / incoherent;
            sum_u += u / incoherent;
            sum_total += static_cast<double>(layout.elements.size());
        }
        const double n = static_cast<double>(trials);
        table.add_row({std::string("summary"), static_cast<std::int64_t>(trials),
                       static_cast<std::int64_t>(std::llround(sum_total / n)), static_cast<std::int64_t>(active),
                       std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN(), sum_c / n, sum_u / n, 1.0, sum_c / sum_u});
        table.footer.push_back("summary row: powers normalized by each trial's incoherent reference and averaged; "
                               "ratio = mean normalized compensated / mean normalized uncompensated");
        return table;
    }

    CsvTable run_field_map(const SweepSpec &spec)
    {
        CsvTable table;
        table.columns = {"theta", "phi", "power_density", "phase"};
        const LisGeometry geom = LisGeometry::sphere(spec.radius);
        const TerminalPose terminal = TerminalPose::on_axis(spec.zk);
        const RadioConfig radio = RadioConfig::from_wavelength(spec.wavelength);
        const double theta0 = terminal.theta0(geom);
        for (std::size_t i = 0; i < spec.theta_points; ++i)
        {
            const double theta = theta0 * static_cast<double>(i) / static_cast<double>(spec.theta_points - 1);
            for (std::size_t j = 0; j < spec.phi_points; ++j)
            {
                const double phi = two_pi * static_cast<double>(j) / static_cast<double>(spec.phi_points);
                const auto s = field_sample(SpherePoint{theta, phi}, terminal, geom, radio);
                table.add_row({theta, phi, s.power(), s.phase});
            }
        }
        return table;
    }

    CsvTable run_experiment(const SweepSpec &spec)
    {
        validate(spec);
        CsvTable table;
        switch (spec.experiment)
        {
        case Experiment::rss_sweep: table = run_rss_sweep(spec); break;
        case Experiment::gamma_sweep: table = run_gamma_sweep(spec); break;
        case Experiment::crlb_sweep: table = run_crlb_sweep(spec); break;
        case Experiment::position_sim: table = run_position_sim(spec); break;
        case Experiment::reflector_sim: table = run_reflector_sim(spec); break;
        case Experiment::field_map: table = run_field_map(spec); break;
        }
        table.metadata = spec_metadata(spec);
        return table;
    }
}
