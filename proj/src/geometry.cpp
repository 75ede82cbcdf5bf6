// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/geometry.hpp"
#include "slis/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slis
{
    namespace
    {
        void require_sphere(const LisGeometry &geom, const char *op)
        {
            if (!geom.is_sphere())
                throw domain_error(std::string(op) + " requires a spherical geometry");
        }

        void require_disk(const LisGeometry &geom, const char *op)
        {
            if (geom.is_sphere())
                throw domain_error(std::string(op) + " requires a disk geometry");
        }
    }

    LisGeometry LisGeometry::sphere(double radius)
    {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw domain_error("sphere radius must be positive and finite");
        return LisGeometry(SurfaceKind::sphere, radius);
    }

    LisGeometry LisGeometry::disk(double radius)
    {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw domain_error("disk radius must be positive and finite");
        return LisGeometry(SurfaceKind::disk, radius);
    }

    double LisGeometry::area() const
    {
        return is_sphere() ? 4.0 * pi * radius_ * radius_ : pi * radius_ * radius_;
    }

    TerminalPose::TerminalPose(const Eigen::Vector3d &position)
        : position_(position), distance_(position.norm())
    {
        if (!position.allFinite())
            throw domain_error("terminal position must be finite");
        if (distance_ == 0.0)
            throw domain_error("terminal cannot be located at the origin");
        to_canonical_ = Eigen::Quaterniond::FromTwoVectors(position_ / distance_, Eigen::Vector3d::UnitZ());
    }

    TerminalPose TerminalPose::on_axis(double z)
    {
        return TerminalPose(Eigen::Vector3d(0.0, 0.0, z));
    }

    double TerminalPose::theta0(const LisGeometry &geom) const
    {
        require_sphere(geom, "theta0");
        return visibility_angle(tau(geom));
    }

    double TerminalPose::elevation() const
    {
        return std::acos(std::clamp(position_.z() / distance_, -1.0, 1.0));
    }

    RadioConfig RadioConfig::from_wavelength(double wavelength)
    {
        if (!(wavelength > 0.0))
            throw domain_error("wavelength must be positive");
        return RadioConfig(wavelength);
    }

    RadioConfig RadioConfig::from_frequency(double frequency)
    {
        if (!(frequency > 0.0))
            throw domain_error("carrier frequency must be positive");
        return RadioConfig(speed_of_light / frequency);
    }

    Eigen::Vector3d SpherePoint::cartesian(double radius) const
    {
        const double st = std::sin(theta);
        return {radius * st * std::cos(phi), radius * st * std::sin(phi), radius * std::cos(theta)};
    }

    SpherePoint SpherePoint::from_cartesian(const Eigen::Vector3d &p)
    {
        SpherePoint s;
        // atan2 form keeps full precision near the poles
        s.theta = std::atan2(std::hypot(p.x(), p.y()), p.z());
        s.phi = std::atan2(p.y(), p.x());
        if (s.phi < 0.0)
            s.phi += two_pi;
        return s;
    }

    Eigen::Vector3d DiskPoint::cartesian() const
    {
        return {r * std::cos(phi), r * std::sin(phi), 0.0};
    }

    double propagation_phase(double eta, double wavelength)
    {
        // Reduce in cycles first so large eta/lambda keeps sub-radian precision.
        const double cycles = eta / wavelength;
        const double frac = cycles - std::floor(cycles);
        double phase = frac == 0.0 ? 0.0 : two_pi * (1.0 - frac);
        if (phase >= two_pi)
            phase = 0.0;
        return phase;
    }

    double visibility_angle(double tau)
    {
        if (!(tau >= 1.0))
            throw domain_error("tau must be >= 1 (terminal inside the sphere)");
        return std::clamp(std::acos(1.0 / tau), 0.0, pi / 2.0);
    }

    double visibility_angle(const TerminalPose &terminal, const LisGeometry &geom)
    {
        return terminal.theta0(geom);
    }

    double distance_cartesian(const Eigen::Vector3d &point, const Eigen::Vector3d &terminal)
    {
        return (point - terminal).norm();
    }

    double distance_eta(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        require_sphere(geom, "distance_eta");
        const double tau = terminal.tau(geom);
        const double c = std::cos(point.theta);
        // 1 - 2 tau c + tau^2 = (tau - c)^2 + sin^2(theta), which avoids cancellation near the pole
        const double s = std::sin(point.theta);
        const double d = tau - c;
        return geom.radius() * std::sqrt(d * d + s * s);
    }

    double distance_eta(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        require_disk(geom, "distance_eta");
        return distance_cartesian(point.cartesian(), terminal.position());
    }

    double cos_aoa(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        require_sphere(geom, "cos_aoa");
        const double theta0 = terminal.theta0(geom);
        if (point.theta > theta0 + visibility_slack)
            throw visibility_error("surface point theta=" + std::to_string(point.theta) +
                                   " lies beyond the visibility angle theta0=" + std::to_string(theta0));
        const double R = geom.radius();
        const double z = terminal.distance();
        const double eta = distance_eta(point, terminal, geom);
        if (eta == 0.0)
            throw domain_error("terminal touches the surface point");
        const double c = (z * z - eta * eta - R * R) / (2.0 * R * eta);
        return std::clamp(c, 0.0, 1.0);
    }

    double cos_aoa(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        require_disk(geom, "cos_aoa");
        const double height = terminal.position().z();
        if (!(height > 0.0))
            throw visibility_error("terminal must be above the disk plane (z > 0)");
        const double eta = distance_eta(point, terminal, geom);
        return std::clamp(height / eta, 0.0, 1.0);
    }

    double cos_aoa_cartesian(const Eigen::Vector3d &point, const Eigen::Vector3d &terminal, double radius)
    {
        const double eta = distance_cartesian(point, terminal);
        const double z2 = terminal.squaredNorm();
        return (z2 - eta * eta - radius * radius) / (2.0 * radius * eta);
    }

    double power_density(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        const double c = cos_aoa(point, terminal, geom);
        const double eta = distance_eta(point, terminal, geom);
        return c / (4.0 * pi * eta * eta);
    }

    double power_density(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom)
    {
        const double c = cos_aoa(point, terminal, geom);
        const double eta = distance_eta(point, terminal, geom);
        return c / (4.0 * pi * eta * eta);
    }

    FieldSample field_sample(const SpherePoint &point, const TerminalPose &terminal, const LisGeometry &geom,
                             const RadioConfig &radio)
    {
        const double eta = distance_eta(point, terminal, geom);
        return {std::sqrt(power_density(point, terminal, geom)), propagation_phase(eta, radio.wavelength())};
    }

    FieldSample field_sample(const DiskPoint &point, const TerminalPose &terminal, const LisGeometry &geom,
                             const RadioConfig &radio)
    {
        const double eta = distance_eta(point, terminal, geom);
        return {std::sqrt(power_density(point, terminal, geom)), propagation_phase(eta, radio.wavelength())};
    }
}
