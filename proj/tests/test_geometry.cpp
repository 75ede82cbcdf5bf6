// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/errors.hpp"
#include "slis/geometry.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <random>

using namespace slis;
using slis::oracle::rel_err;

namespace
{
    double eta_of(double R, double tau, double theta)
    {
        return distance_eta(SpherePoint{theta, 0.0}, TerminalPose::on_axis(tau * R), LisGeometry::sphere(R));
    }

    double cos_of(double R, double tau, double theta)
    {
        return cos_aoa(SpherePoint{theta, 0.0}, TerminalPose::on_axis(tau * R), LisGeometry::sphere(R));
    }

    // distance of a phase to 0 on the circle
    double circular_gap(double a, double b)
    {
        const double d = std::fmod(std::abs(a - b), two_pi);
        return std::min(d, two_pi - d);
    }
}

TEST(Distance, PoleAndEquator)
{
    EXPECT_NEAR(eta_of(1.0, 2.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(eta_of(1.0, 2.0, pi / 2), std::sqrt(5.0), 1e-15);
}

TEST(Distance, MatchesCartesian)
{
    const Eigen::Vector3d p = oracle::sphere_point(2.0, pi / 6, 0.0);
    const double want = (Eigen::Vector3d(0, 0, 3.0) - p).norm();
    EXPECT_LT(rel_err(eta_of(2.0, 1.5, pi / 6), want), 1e-14);
    EXPECT_NEAR(want, 1.6148359528406395494, 1e-15);
}

TEST(Distance, TriangleBoundsAndCartesianAgreement)
{
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const double R = 0.1 + 10.0 * u(gen);
        const double tau = 1.0 + 50.0 * u(gen);
        const double theta = pi * u(gen);
        const double phi = two_pi * u(gen);
        const double z = tau * R;
        const double eta =
            distance_eta(SpherePoint{theta, phi}, TerminalPose::on_axis(z), LisGeometry::sphere(R));
        EXPECT_GE(eta, (z - R) * (1 - 1e-14));
        EXPECT_LE(eta, (z + R) * (1 + 1e-14));
        const double cart = distance_cartesian(oracle::sphere_point(R, theta, phi), Eigen::Vector3d(0, 0, z));
        EXPECT_LT(rel_err(eta, cart), 1e-12);
    }
}

TEST(Distance, AzimuthInvariant)
{
    const double ref = eta_of(1.3, 3.0, 0.7);
    for (double phi : {0.1, 1.0, 2.5, 4.0, 6.2})
        EXPECT_EQ(distance_eta(SpherePoint{0.7, phi}, TerminalPose::on_axis(3.9), LisGeometry::sphere(1.3)), ref);
}

TEST(SpherePoint, CartesianRoundTrip)
{
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const SpherePoint s{pi * u(gen), two_pi * u(gen)};
        const double R = 0.01 + 100.0 * u(gen);
        const Eigen::Vector3d p = s.cartesian(R);
        const SpherePoint back = SpherePoint::from_cartesian(p);
        EXPECT_LT((back.cartesian(R) - p).norm(), 1e-12 * R);
        EXPECT_NEAR(back.theta, s.theta, 1e-12);
    }
}

TEST(TerminalPose, RotationMovesTerminalOntoAxis)
{
    std::mt19937_64 gen(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const Eigen::Vector3d p(n(gen), n(gen), n(gen));
        const TerminalPose pose(p);
        const Eigen::Vector3d q = pose.to_canonical() * p;
        EXPECT_NEAR(q.x(), 0.0, 1e-12 * p.norm());
        EXPECT_NEAR(q.y(), 0.0, 1e-12 * p.norm());
        EXPECT_NEAR(q.z(), p.norm(), 1e-12 * p.norm());
    }
    EXPECT_THROW(TerminalPose(Eigen::Vector3d::Zero()), domain_error);
}

TEST(Visibility, KnownAngles)
{
    EXPECT_EQ(visibility_angle(1.0), 0.0);
    EXPECT_NEAR(visibility_angle(2.0), pi / 3, 1e-15);
    EXPECT_NEAR(visibility_angle(1e12), pi / 2, 1e-5);
    EXPECT_THROW(visibility_angle(0.5), domain_error);
    EXPECT_NEAR(visibility_angle(TerminalPose::on_axis(6.0), LisGeometry::sphere(3.0)), pi / 3, 1e-15);
}

TEST(AngleOfArrival, Examples)
{
    EXPECT_NEAR(cos_of(1.0, 2.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(cos_of(1.0, 2.0, pi / 3), 0.0, 1e-12);
    // tangent-plane form R(tau cos theta - 1)/eta
    const double eta = eta_of(1.0, 4.0, pi / 6);
    EXPECT_LT(rel_err(cos_of(1.0, 4.0, pi / 6), (4.0 * std::cos(pi / 6) - 1.0) / eta), 1e-12);
}

TEST(AngleOfArrival, BeyondVisibilityRejected)
{
    const double t0 = visibility_angle(2.0);
    EXPECT_THROW(cos_of(1.0, 2.0, t0 + 1e-6), visibility_error);
    EXPECT_NO_THROW(cos_of(1.0, 2.0, t0 + 0.5e-12));
    EXPECT_GE(cos_of(1.0, 2.0, t0 + 0.5e-12), 0.0);
}

TEST(AngleOfArrival, FormsAgreeAndDecreaseInTheta)
{
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i)
    {
        const double R = 0.1 + 5.0 * u(gen);
        const double tau = 1.01 + 30.0 * u(gen);
        const double theta = 0.999 * visibility_angle(tau) * u(gen);
        const double c = cos_of(R, tau, theta);
        const double eta = eta_of(R, tau, theta);
        const double plane_form = R * (tau * std::cos(theta) - 1.0) / eta;
        EXPECT_NEAR(c, plane_form, 1e-12);
        const double cart = oracle::sphere_density_cartesian(oracle::sphere_point(R, theta, 0.3),
                                                              Eigen::Vector3d(0, 0, tau * R)) *
                            4.0 * pi * eta * eta;
        EXPECT_NEAR(c, cart, 1e-12);
    }
    for (double tau : {1.2, 2.0, 7.0})
    {
        const double t0 = visibility_angle(tau);
        double prev = 2.0;
        for (int k = 0; k <= 200; ++k)
        {
            const double c = cos_of(1.0, tau, t0 * k / 200.0);
            EXPECT_LE(c, prev);
            prev = c;
        }
    }
}

TEST(FieldSample, OnAxis)
{
    const auto s = field_sample(SpherePoint{0.0, 0.0}, TerminalPose::on_axis(2.0), LisGeometry::sphere(1.0),
                                RadioConfig::from_wavelength(0.1));
    EXPECT_LT(rel_err(s.power(), 1.0 / (4.0 * pi)), 1e-12);
    EXPECT_NEAR(s.power(), 0.079577, 1e-6);
    EXPECT_LT(circular_gap(s.phase, 0.0), 1e-9);
}

TEST(FieldSample, VanishesAtVisibilityEdge)
{
    const auto s = field_sample(SpherePoint{visibility_angle(2.0), 1.0}, TerminalPose::on_axis(2.0),
                                LisGeometry::sphere(1.0), RadioConfig::from_wavelength(0.1));
    EXPECT_LT(s.power(), 1e-15);
}

TEST(FieldSample, MatchesCartesianEvaluation)
{
    const auto s = field_sample(SpherePoint{0.5, 0.0}, TerminalPose::on_axis(4.0), LisGeometry::sphere(1.0),
                                RadioConfig::from_wavelength(0.05));
    const Eigen::Vector3d p = oracle::sphere_point(1.0, 0.5, 0.0);
    const double want = oracle::sphere_density_cartesian(p, Eigen::Vector3d(0, 0, 4.0));
    EXPECT_LT(rel_err(s.power(), want), 1e-12);
    EXPECT_LT(rel_err(s.power(), 0.0063367751641113678686), 1e-12);
    const double eta = (Eigen::Vector3d(0, 0, 4.0) - p).norm();
    EXPECT_LT(circular_gap(s.phase, -two_pi * eta / 0.05), 1e-9);
    EXPECT_NEAR(s.phase, 5.1510483037552272307, 1e-9);
}

TEST(FieldSample, PhaseWrappedAndAzimuthInvariant)
{
    const TerminalPose t = TerminalPose::on_axis(3.0);
    const auto g = LisGeometry::sphere(1.0);
    const auto radio = RadioConfig::from_wavelength(0.0123);
    const auto ref = field_sample(SpherePoint{0.4, 0.0}, t, g, radio);
    for (int k = 0; k < 50; ++k)
    {
        const auto s = field_sample(SpherePoint{0.02 * k, 0.3 * k}, t, g, radio);
        EXPECT_GE(s.phase, 0.0);
        EXPECT_LT(s.phase, two_pi);
        EXPECT_EQ(field_sample(SpherePoint{0.4, 0.3 * k}, t, g, radio).power(), ref.power());
    }
}

TEST(Disk, OnAxisDensity)
{
    // Terminal above the disk centre: cos psi = 1 at the centre, density 1/(4 pi z^2)
    const auto g = LisGeometry::disk(1.0);
    const TerminalPose t = TerminalPose::on_axis(2.0);
    EXPECT_LT(rel_err(power_density(DiskPoint{0.0, 0.0}, t, g), 1.0 / (16.0 * pi)), 1e-14);
    const double eta = std::sqrt(4.0 + 0.25);
    EXPECT_LT(rel_err(power_density(DiskPoint{0.5, 1.0}, t, g), (2.0 / eta) / (4.0 * pi * eta * eta)), 1e-14);
}

TEST(Config, Validation)
{
    EXPECT_THROW(LisGeometry::sphere(0.0), domain_error);
    EXPECT_THROW(LisGeometry::disk(-1.0), domain_error);
    EXPECT_THROW(RadioConfig::from_wavelength(0.0), domain_error);
    EXPECT_LT(rel_err(RadioConfig::from_frequency(3e9).wavelength(), speed_of_light / 3e9), 1e-15);
    EXPECT_LT(rel_err(LisGeometry::sphere(2.0).area(), 16.0 * pi), 1e-15);
    EXPECT_LT(rel_err(LisGeometry::disk(2.0).area(), 4.0 * pi), 1e-15);
}
