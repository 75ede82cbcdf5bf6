// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/rss.hpp"
#include "slis/errors.hpp"
#include "slis/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace slis
{
    namespace
    {
        void require_tau_sphere(double tau)
        {
            if (!(tau >= 1.0) || !std::isfinite(tau))
                throw domain_error("tau must be finite and >= 1 for a sphere, got " + std::to_string(tau));
        }

        // tau - cos(t) written as (tau - 1) + 2 sin^2(t/2); exact cancellation-free near tau = 1, t = 0
        double tau_minus_cos(double tau, double theta)
        {
            const double h = std::sin(0.5 * theta);
            return (tau - 1.0) + 2.0 * h * h;
        }
    }

    double rss_sphere_cap_unchecked(double tau, double theta_hat)
    {
        if (theta_hat == 0.0)
            return 0.0;
        const double s = std::sin(theta_hat);
        const double d = tau_minus_cos(tau, theta_hat);
        const double D = std::sqrt(d * d + s * s);
        if (D == 0.0)
            return 0.0;
        // 1 - d/D rewritten as s^2 / (D (D + d))
        return s * s / (2.0 * D * (D + d));
    }

    RssValue rss_sphere_cap(double tau, double theta_hat)
    {
        require_tau_sphere(tau);
        if (!(theta_hat >= 0.0))
            throw domain_error("cap angle must be non-negative");
        const double theta0 = visibility_angle(tau);
        if (theta_hat > theta0 + visibility_slack)
            throw visibility_error("cap angle " + std::to_string(theta_hat) + " exceeds theta0 " +
                                   std::to_string(theta0));
        return rss_sphere_cap_unchecked(tau, std::min(theta_hat, theta0));
    }

    RssValue rss_sphere_full(double tau)
    {
        require_tau_sphere(tau);
        if (tau == 1.0)
            return 0.5;
        const double root = std::sqrt((tau - 1.0) * (tau + 1.0));
        return 1.0 / (2.0 * tau * (tau + root));
    }

    RssValue rss_disk_approx(double tau, double theta)
    {
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw domain_error("disk tau must be finite and non-negative");
        if (!(theta >= 0.0 && theta <= pi / 2.0))
            throw domain_error("terminal elevation must lie in [0, pi/2]");
        const double q = std::sqrt(tau * tau + 1.0);
        return std::cos(theta) / (2.0 * q * (q + tau));
    }

    double gamma_ratio(double tau, double planar_radius_scale)
    {
        require_tau_sphere(tau);
        if (!(planar_radius_scale > 0.0))
            throw domain_error("planar radius scale must be positive");
        if (tau == 1.0 && planar_radius_scale == equal_area_radius_scale)
            return gamma_near_surface;
        // Both numerator and denominator are halved-power expressions in cancellation-free form.
        const double numerator = 2.0 * rss_sphere_full(tau);
        const double s2 = planar_radius_scale * planar_radius_scale;
        const double q = std::sqrt(tau * tau + s2);
        const double denominator = s2 / (q * (q + tau));
        return 0.5 * pi * numerator / denominator;
    }

    double rss_sphere_cap_dtau(double tau, double theta_hat)
    {
        const double s = std::sin(theta_hat);
        const double d = tau_minus_cos(tau, theta_hat);
        const double D = std::sqrt(d * d + s * s);
        return -0.5 * s * s / (D * D * D);
    }

    double rss_sphere_full_dtau(double tau)
    {
        require_tau_sphere(tau);
        if (tau == 1.0)
            return -std::numeric_limits<double>::infinity();
        return -1.0 / (2.0 * tau * tau * std::sqrt((tau - 1.0) * (tau + 1.0)));
    }

    double rss_disk_dtau(double tau)
    {
        const double q2 = tau * tau + 1.0;
        return -0.5 / (q2 * std::sqrt(q2));
    }

    double rss_sphere_cap_integrand(double tau, double theta)
    {
        const double s = std::sin(theta);
        const double d = tau_minus_cos(tau, theta);
        const double D = std::sqrt(d * d + s * s);
        return 0.5 * (tau * std::cos(theta) - 1.0) * s / (D * D * D);
    }
}
