// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_RSS_HPP
#define SLIS_RSS_HPP

#include <numbers>

namespace slis
{
    // Received power as a fraction of the (unit) transmit power. At most half of it reaches one side.
    using RssValue = double;

    // Default disk-to-sphere radius scale for the gain ratio: a disk of radius sqrt(2) R has the same area
    // as the receiving hemisphere of the sphere.
    inline constexpr double equal_area_radius_scale = std::numbers::sqrt2;

    // gamma in the limit tau -> 1 with the equal-area disk: sqrt(3) pi / (2 (sqrt(3) - 1))
    inline constexpr double gamma_near_surface =
        std::numbers::sqrt3 * std::numbers::pi / (2.0 * (std::numbers::sqrt3 - 1.0));

    // Power collected by the spherical cap theta in [0, theta_hat] around the terminal direction:
    //   1/2 (1 - (tau - cos t) / sqrt(tau^2 - 2 tau cos t + 1))
    // Requires tau >= 1 and theta_hat <= theta0(tau).
    RssValue rss_sphere_cap(double tau, double theta_hat);

    // Cap power without domain checks; valid formula for any tau > 0, theta in [0, pi].
    // Used by estimators that evaluate candidates outside the visible region.
    double rss_sphere_cap_unchecked(double tau, double theta_hat);

    // Whole visible cap: 1/2 (1 - sqrt(tau^2 - 1) / tau)
    RssValue rss_sphere_full(double tau);

    // Disk of radius R, terminal at distance tau R and elevation theta off the disk normal:
    //   cos(theta)/2 (1 - tau / sqrt(tau^2 + 1)); exact for theta = 0, accurate for tau >> 1.
    RssValue rss_disk_approx(double tau, double theta);

    // Sphere of radius R against a disk of radius scale * R, with the disk power averaged over the terminal
    // elevation in [0, pi/2). The default scale compares equal areas.
    double gamma_ratio(double tau, double planar_radius_scale = equal_area_radius_scale);

    // Derivatives with respect to tau
    double rss_sphere_cap_dtau(double tau, double theta_hat);
    double rss_sphere_full_dtau(double tau);
    double rss_disk_dtau(double tau); // at theta = 0

    // d/dtheta_hat of the cap power, i.e. the integrand 1/2 (tau cos t - 1) sin t / (1 - 2 tau cos t + tau^2)^(3/2)
    double rss_sphere_cap_integrand(double tau, double theta);
}

#endif
