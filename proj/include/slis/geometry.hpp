// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_GEOMETRY_HPP
#define SLIS_GEOMETRY_HPP

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <numbers>

namespace slis
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // [m/s]

    // Points with theta in (theta0, theta0 + visibility_slack] count as visible (cosine clamped to 0).
    inline constexpr double visibility_slack = 1e-12;

    enum class SurfaceKind
    {
        sphere,
        disk
    };

    // Spherical LIS centered at the origin, or a planar disk LIS in the xy-plane centered at the origin.
    class LisGeometry
    {
    public:
        static LisGeometry sphere(double radius);
        static LisGeometry disk(double radius);

        SurfaceKind kind() const { return kind_; }
        double radius() const { return radius_; }
        bool is_sphere() const { return kind_ == SurfaceKind::sphere; }

        // Total surface area: 4 pi R^2 (sphere) or pi R^2 (disk)
        double area() const;

    private:
        LisGeometry(SurfaceKind kind, double radius) : kind_(kind), radius_(radius) {}
        SurfaceKind kind_;
        double radius_;
    };

    // Terminal position in Cartesian coordinates [m].
    // The rotation that takes the terminal direction onto +z is computed on construction; for a sphere the
    // canonical pose is (0, 0, |p|).
    class TerminalPose
    {
    public:
        explicit TerminalPose(const Eigen::Vector3d &position);
        static TerminalPose on_axis(double z);

        const Eigen::Vector3d &position() const { return position_; }
        double distance() const { return distance_; }
        Eigen::Vector3d direction() const { return position_ / distance_; }

        // Rotation mapping the terminal direction onto +z
        const Eigen::Quaterniond &to_canonical() const { return to_canonical_; }

        // Normalized distance tau = |p| / R
        double tau(const LisGeometry &geom) const { return distance_ / geom.radius(); }

        // Visibility angle arccos(1/tau); sphere only, throws domain_error for tau < 1
        double theta0(const LisGeometry &geom) const;

        // Angle between the terminal direction and the +z axis (disk normal), in [0, pi]
        double elevation() const;

    private:
        Eigen::Vector3d position_;
        double distance_;
        Eigen::Quaterniond to_canonical_;
    };

    // Narrow-band carrier. Only the wavelength enters the field phase; the frequency is informational.
    class RadioConfig
    {
    public:
        static RadioConfig from_wavelength(double wavelength);
        static RadioConfig from_frequency(double frequency);

        double wavelength() const { return wavelength_; }
        double frequency() const { return speed_of_light / wavelength_; }

    private:
        explicit RadioConfig(double wavelength) : wavelength_(wavelength) {}
        double wavelength_;
    };

    // Complex field amplitude at one surface point (unit transmit power).
    struct FieldSample
    {
        double amplitude = 0.0; // [1/m]
        double phase = 0.0;     // [rad], in [0, 2 pi)

        double power() const { return amplitude * amplitude; }
        std::complex<double> value() const { return std::polar(amplitude, phase); }
    };

    // Point on the sphere in the canonical frame (terminal on +z).
    struct SpherePoint
    {
        double theta = 0.0; // polar angle [0, pi]
        double phi = 0.0;   // azimuth [0, 2 pi)

        Eigen::Vector3d cartesian(double radius) const;
        static SpherePoint from_cartesian(const Eigen::Vector3d &p);
    };

    // Point on a disk in polar coordinates (disk in the xy-plane).
    struct DiskPoint
    {
        double r = 0.0;
        double phi = 0.0;

        Eigen::Vector3d cartesian() const;
    };

    // Wraps -2 pi eta / lambda into [0, 2 pi)
    double propagation_phase(double eta, double wavelength);

    double visibility_angle(double tau);
    double visibility_angle(const TerminalPose &terminal, const LisGeometry &geom);

    double distance_cartesian(const Eigen::Vector3d &point, const Eigen::Vector3d &terminal);

    // Sphere: R sqrt(1 - 2 tau cos(theta) + tau^2). Disk: Cartesian distance to the terminal.
    double distance_eta(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom);
    double distance_eta(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom);

    // Cosine of the angle of arrival against the outward normal, via the cosine theorem
    // (z^2 - eta^2 - R^2) / (2 R eta). Throws visibility_error for theta > theta0.
    double cos_aoa(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom);
    double cos_aoa(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom);

    // Cosine theorem on raw Cartesian vectors; no visibility check, may be negative.
    double cos_aoa_cartesian(const Eigen::Vector3d &point, const Eigen::Vector3d &terminal, double radius);

    // |s|^2 = cos(psi) / (4 pi eta^2)
    double power_density(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom);
    double power_density(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom);

    FieldSample field_sample(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom,
                             const RadioConfig &radio);
    FieldSample field_sample(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom,
                             const RadioConfig &radio);
}

#endif
