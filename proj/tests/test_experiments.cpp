// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/csv.hpp"
#include "slis/errors.hpp"
#include "slis/experiments.hpp"
#include "slis/geometry.hpp"
#include "slis/positioning.hpp"
#include "slis/random.hpp"
#include "slis/rss.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace slis;
using slis::oracle::rel_err;

namespace
{
    SweepSpec spec_for(Experiment e)
    {
        SweepSpec s;
        s.experiment = e;
        return s;
    }

    std::filesystem::path temp_file(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("slis_test_" + name);
    }

    std::string read_all(const std::filesystem::path &p)
    {
        std::ifstream f(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }
}

TEST(Names, RoundTrip)
{
    for (auto e : {Experiment::rss_sweep, Experiment::gamma_sweep, Experiment::crlb_sweep, Experiment::position_sim,
                   Experiment::reflector_sim, Experiment::field_map})
        EXPECT_EQ(parse_experiment(experiment_name(e)), e);
    EXPECT_THROW(parse_experiment("warp-drive"), validation_error);
}

TEST(Settings, ParsingAndErrors)
{
    auto s = spec_for(Experiment::reflector_sim);
    apply_setting(s, "zk", " 5.5 ");
    apply_setting(s, "points", "12");
    apply_setting(s, "log", "true");
    apply_setting(s, "bs", "1,2,3");
    apply_setting(s, "elements", "64");
    EXPECT_EQ(s.zk, 5.5);
    EXPECT_EQ(s.points, 12u);
    EXPECT_TRUE(s.log_spacing);
    EXPECT_EQ(*s.bs_position, Eigen::Vector3d(1, 2, 3));
    EXPECT_EQ(s.resolved_elements(), 64u);
    EXPECT_THROW(apply_setting(s, "zk", "abc"), validation_error);
    EXPECT_THROW(apply_setting(s, "points", "-3"), validation_error);
    EXPECT_THROW(apply_setting(s, "bs", "1,2"), validation_error);
    EXPECT_THROW(apply_setting(s, "warp", "9"), validation_error);
}

TEST(Settings, Defaults)
{
    EXPECT_EQ(spec_for(Experiment::position_sim).resolved_elements(), 20000u);
    EXPECT_EQ(spec_for(Experiment::reflector_sim).resolved_elements(), 1000u);
    EXPECT_EQ(spec_for(Experiment::reflector_sim).resolved_trials(), 50u);
    EXPECT_NO_THROW(validate(spec_for(Experiment::rss_sweep)));
}

TEST(Settings, ConfigFileThenFlags)
{
    const auto path = temp_file("config.cfg");
    {
        std::ofstream f(path);
        f << "# sweep\n\nzk = 8\npoints=3\nseed=99\n";
    }
    auto s = spec_for(Experiment::crlb_sweep);
    apply_config_file(s, path.string());
    EXPECT_EQ(s.zk, 8.0);
    EXPECT_EQ(s.points, 3u);
    apply_setting(s, "points", "4"); // command line wins
    EXPECT_EQ(s.points, 4u);
    EXPECT_EQ(s.seed, 99u);

    {
        std::ofstream f(path);
        f << "zk=8\nnot a setting\n";
    }
    try
    {
        apply_config_file(s, path.string());
        FAIL() << "expected a validation error";
    }
    catch (const validation_error &e)
    {
        EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
    EXPECT_THROW(apply_config_file(s, path.string()), io_error);
}

TEST(Validation, RangesAndDomains)
{
    auto s = spec_for(Experiment::rss_sweep);
    s.points = 0;
    EXPECT_THROW(validate(s), validation_error);
    s.points = 5;
    s.r_min = 2.0;
    s.r_max = 1.0;
    EXPECT_THROW(validate(s), validation_error);
    s.r_min = s.r_max = 1.0;
    EXPECT_THROW(validate(s), validation_error);
    s.points = 1;
    EXPECT_NO_THROW(validate(s));
    s.r_max = s.r_min = 4.0; // tau = 1, terminal on the surface
    EXPECT_THROW(validate(s), validation_error);
    s.experiment = Experiment::crlb_sweep;
    EXPECT_NO_THROW(validate(s));
    s.r_max = s.r_min = 5.0;
    EXPECT_THROW(validate(s), validation_error);

    auto r = spec_for(Experiment::reflector_sim);
    r.bs_position = Eigen::Vector3d(3, 0, 0);
    EXPECT_THROW(validate(r), validation_error); // ue missing
    r.ue_position = Eigen::Vector3d(0, 3, 0);
    r.rx_half_angle_deg = 50.0;
    r.tx_half_angle_deg = 45.0;
    EXPECT_THROW(validate(r), validation_error);
    r.tx_half_angle_deg = 30.0;
    EXPECT_NO_THROW(validate(r));
    r.rx_half_angle_deg = 100.0;
    EXPECT_THROW(validate(r), validation_error);

    auto f = spec_for(Experiment::field_map);
    f.zk = 0.5;
    EXPECT_THROW(validate(f), validation_error);
}

TEST(Grid, EndpointsAndSpacing)
{
    auto s = spec_for(Experiment::crlb_sweep);
    s.r_min = 0.04;
    s.r_max = 0.4;
    s.points = 11;
    auto g = radius_grid(s);
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 0.04);
    EXPECT_EQ(g.back(), 0.4);
    EXPECT_NEAR(g[5], 0.22, 1e-15);
    s.log_spacing = true;
    g = radius_grid(s);
    EXPECT_EQ(g.back(), 0.4);
    EXPECT_LT(rel_err(g[5], std::sqrt(0.04 * 0.4)), 1e-14);
}

TEST(Csv, SeventeenDigitRoundTrip)
{
    Rng rng(31);
    for (int i = 0; i < 2000; ++i)
    {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, 40.0 * rng.uniform() - 20.0);
        EXPECT_EQ(std::strtod(format_cell(v).c_str(), nullptr), v);
    }
    EXPECT_EQ(format_cell(std::int64_t{-42}), "-42");
    EXPECT_EQ(format_cell(std::string("summary")), "summary");
}

TEST(Csv, LayoutAndFile)
{
    CsvTable t;
    t.metadata = {{"experiment", "demo"}};
    t.columns = {"a", "b"};
    t.add_row({1.5, std::int64_t{2}});
    t.footer = {"note"};
    EXPECT_EQ(to_csv(t), "# experiment=demo\na,b\n1.5,2\n# note\n");
    EXPECT_THROW(t.add_row({1.0}), domain_error);
    EXPECT_EQ(t.number(0, "b"), 2.0);

    const auto path = temp_file("table.csv");
    write_csv(t, path.string());
    EXPECT_EQ(read_all(path), to_csv(t));
    std::filesystem::remove(path);
    EXPECT_THROW(write_csv(t, "/nonexistent-dir/x.csv"), io_error);
}

TEST(RssSweep, ClosedFormMatchesOracleAndGapShrinks)
{
    auto s = spec_for(Experiment::rss_sweep);
    s.r_min = 0.2;
    s.r_max = 2.0;
    s.points = 12;
    const auto t = run_experiment(s);
    ASSERT_EQ(t.rows.size(), 12u);
    double prev_gap = 1.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        EXPECT_LT(rel_err(t.number(i, "P_sp_oracle"), t.number(i, "P_sp_closed")), 1e-6);
        // rows run from small R (large tau) to large R, so the gap grows along the table
        const double gap = t.number(i, "rel_gap_approx");
        if (i > 0)
        {
            EXPECT_GT(gap, prev_gap);
        }
        prev_gap = gap;
        if (t.number(i, "tau") >= 6.0)
        {
            EXPECT_LT(gap, 0.05);
        }
    }
    s.points = 1;
    s.r_min = s.r_max = 2.0;
    const auto one = run_experiment(s);
    EXPECT_LT(rel_err(one.number(0, "P_sp_closed"), 0.066987298107780676618), 1e-14);
}

TEST(GammaSweep, NumericBelowClosedNearSurface)
{
    auto s = spec_for(Experiment::gamma_sweep);
    s.r_min = 1.0;
    s.r_max = 4.0 / (1.0 + 1e-9);
    s.points = 6;
    const auto t = run_experiment(s);
    const auto last = t.rows.size() - 1;
    EXPECT_NEAR(t.number(last, "gamma_closed"), gamma_near_surface, 1e-3);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (t.number(i, "tau") < 5.0)
        {
            EXPECT_LT(t.number(i, "gamma_numeric"), t.number(i, "gamma_closed"));
        }
    EXPECT_EQ(t.footer.size(), 5u);
}

TEST(CrlbSweep, SurfaceRowAndOrdering)
{
    auto s = spec_for(Experiment::crlb_sweep);
    s.r_min = 0.04;
    s.r_max = 4.0;
    s.points = 25;
    const auto t = run_experiment(s);
    const auto last = t.rows.size() - 1;
    EXPECT_EQ(t.number(last, "tau"), 1.0);
    EXPECT_EQ(t.number(last, "crlb_sp_factor"), 0.0);
    EXPECT_EQ(t.number(last, "crlb_pl_factor"), 32.0);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        EXPECT_LT(t.number(i, "crlb_sp_factor"), t.number(i, "crlb_pl_factor"));
        const double tau = t.number(i, "tau");
        if (tau > 1.0)
        {
            const double h = 1e-6;
            const double fd = (std::log(crlb_sphere(tau * (1 + h)).factor) - std::log(crlb_sphere(tau * (1 - h)).factor)) /
                              (std::log(1 + h) - std::log(1 - h));
            EXPECT_LT(rel_err(t.number(i, "slope_sp"), -fd), 1e-6) << tau;
        }
    }
}

TEST(PositionSim, NoiselessRecovery)
{
    auto s = spec_for(Experiment::position_sim);
    s.r_min = 1.0;
    s.r_max = 2.0;
    s.points = 2;
    s.trials = 2;
    s.elements = 20000;
    const auto t = run_experiment(s);
    ASSERT_EQ(t.rows.size(), 6u);
    const double w = detection_ring_width(20000);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
    {
        const double tau = t.number(i, "tau");
        const double R = t.number(i, "R");
        EXPECT_LE(std::abs(t.number(i, "theta0_hat") - visibility_angle(tau)), w);
        // z error bounded by the ring resolution mapped through z = R / cos(theta)
        const double z_hi = R / std::cos(visibility_angle(tau) + w);
        EXPECT_LE(std::abs(t.number(i, "z_hat") - s.zk), z_hi - s.zk);
        EXPECT_LT(rel_err(t.number(i, "tau_hat_series"), tau), 1e-9);
    }
}

TEST(PositionSim, NoisySummary)
{
    auto s = spec_for(Experiment::position_sim);
    s.r_min = 1.0;
    s.r_max = 1.0;
    s.points = 1;
    s.trials = 200;
    s.elements = 2000;
    s.sigma = 1e-6;
    s.sigma_rss = 1e-4;
    const auto t = run_experiment(s);
    const auto last = t.rows.size() - 1;
    EXPECT_EQ(std::get<std::string>(t.rows[last][0]), "summary");
    EXPECT_GT(t.number(last, "crlb_tau"), 0.0);
    // mean squared error of tau stays within a factor of a few of the series bound (the ladder angles
    // themselves come from the noisy boundary estimate)
    EXPECT_LT(t.number(last, "tau_sq_err"), 10.0 * t.number(last, "crlb_tau"));
}

TEST(ReflectorSim, CoherentRatioAndFixedGeometry)
{
    auto s = spec_for(Experiment::reflector_sim);
    s.trials = 10;
    s.elements = 300;
    const auto t = run_experiment(s);
    ASSERT_EQ(t.rows.size(), 11u);
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
    {
        EXPECT_EQ(t.number(i, "N"), 300.0);
        EXPECT_GE(t.number(i, "separation"), 1.0);
        EXPECT_GE(t.number(i, "compensated"), t.number(i, "uncompensated"));
    }
    const double ratio = t.number(10, "ratio");
    EXPECT_GE(ratio, 0.5 * 300);
    EXPECT_LE(ratio, 2.0 * 300);

    s.bs_position = Eigen::Vector3d(4, 0, 0);
    s.ue_position = Eigen::Vector3d(0, 0, 3);
    s.trials = 2;
    const auto fixed = run_experiment(s);
    EXPECT_EQ(fixed.number(0, "compensated"), fixed.number(1, "compensated"));
}

TEST(FieldMap, CoversVisibleCap)
{
    auto s = spec_for(Experiment::field_map);
    s.zk = 2.0;
    s.theta_points = 5;
    s.phi_points = 4;
    const auto t = run_experiment(s);
    ASSERT_EQ(t.rows.size(), 20u);
    EXPECT_EQ(t.number(0, "theta"), 0.0);
    EXPECT_NEAR(t.number(19, "theta"), pi / 3, 1e-15);
    EXPECT_LT(rel_err(t.number(0, "power_density"), 1.0 / (4.0 * pi)), 1e-12);
    EXPECT_LT(t.number(19, "power_density"), 1e-15);
}

TEST(Determinism, IdenticalSpecsGiveIdenticalBytes)
{
    std::vector<SweepSpec> specs;
    for (auto e : {Experiment::rss_sweep, Experiment::gamma_sweep, Experiment::crlb_sweep, Experiment::position_sim,
                   Experiment::reflector_sim, Experiment::field_map})
    {
        auto s = spec_for(e);
        s.points = 4;
        s.r_min = 1.0;
        s.r_max = 3.0;
        s.trials = 3;
        s.elements = e == Experiment::reflector_sim ? 100 : 1000;
        s.sigma = 1e-6;
        s.sigma_rss = 1e-4;
        s.theta_points = 4;
        s.phi_points = 3;
        specs.push_back(s);
    }
    for (const auto &s : specs)
        EXPECT_EQ(to_csv(run_experiment(s)), to_csv(run_experiment(s))) << experiment_name(s.experiment);

    auto a = specs[4];
    auto b = specs[4];
    b.seed = a.seed + 1;
    EXPECT_NE(to_csv(run_experiment(a)), to_csv(run_experiment(b)));
}
