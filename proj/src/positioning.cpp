// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/positioning.hpp"
#include "slis/errors.hpp"
#include "slis/geometry.hpp"
#include "slis/lattice.hpp"
#include "slis/random.hpp"
#include "slis/rss.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace slis
{
    namespace
    {
        constexpr double tau_floor = 1.0 + 1e-9;

        // Root of a function with f(lo) and f(hi) of opposite sign (or zero)
        template <typename F>
        double bracketed_root(F &&f, double lo, double hi, double f_lo, double f_hi)
        {
            if (f_lo == 0.0)
                return lo;
            if (f_hi == 0.0)
                return hi;
            std::uintmax_t max_iter = 400;
            auto tol = [](double a, double b) {
                return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), 1.0);
            };
            const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, max_iter);
            return 0.5 * (a + b);
        }
    }

    RssSeries RssSeries::ladder(double theta0_hat, std::size_t count, double sigma_p)
    {
        if (count < 1)
            throw domain_error("an RSS series needs at least one measurement");
        RssSeries series;
        series.sigma_p = sigma_p;
        for (std::size_t n = 1; n <= count; ++n)
            series.samples.push_back({theta0_hat / static_cast<double>(n), 0.0});
        return series;
    }

    void RssSeries::validate() const
    {
        if (samples.empty())
            throw domain_error("an RSS series needs at least one measurement");
        if (!(sigma_p >= 0.0))
            throw domain_error("series noise level must be non-negative");
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const auto &s = samples[i];
            if (!(s.theta >= 0.0 && s.theta <= pi / 2.0))
                throw domain_error("series cap angles must lie in [0, pi/2]");
            if (!std::isfinite(s.power))
                throw domain_error("series powers must be finite");
            if (i > 0 && !(s.theta < samples[i - 1].theta))
                throw domain_error("series cap angles must be strictly decreasing");
        }
    }

    double received_cap_power(double tau, double theta)
    {
        return rss_sphere_cap_unchecked(tau, std::min(theta, visibility_angle(tau)));
    }

    double received_cap_power_dtau(double tau, double theta)
    {
        const double theta0 = visibility_angle(tau);
        return theta < theta0 ? rss_sphere_cap_dtau(tau, theta) : rss_sphere_full_dtau(tau);
    }

    double estimate_z_from_angle(const AngleMeasurement &m, double radius)
    {
        if (!(radius > 0.0))
            throw domain_error("radius must be positive");
        if (!(m.theta0_hat >= 0.0 && m.theta0_hat < pi / 2.0))
            throw domain_error("measured boundary angle must lie in [0, pi/2)");
        return radius / std::cos(m.theta0_hat);
    }

    double estimate_tau_from_rss_series(const RssSeries &series, double tau_max)
    {
        series.validate();
        if (!(tau_max > tau_floor))
            throw domain_error("tau_max must exceed 1 + 1e-9");
        const double lo = tau_floor;
        const double hi = tau_max;

        const double p_min = std::numeric_limits<double>::min();
        const double p_max = std::nextafter(0.5, 0.0);

        std::vector<RssSample> used;
        std::vector<double> inversions;
        std::size_t in_range = 0;
        for (const auto &s : series.samples)
        {
            if (s.theta == 0.0)
                continue; // an empty cap carries no information on tau
            const double m = std::clamp(s.power, p_min, p_max);
            const double top = received_cap_power(lo, s.theta);
            const double bottom = received_cap_power(hi, s.theta);
            used.push_back({s.theta, m});
            if (m > top)
                inversions.push_back(lo);
            else if (m < bottom)
                inversions.push_back(hi);
            else
            {
                ++in_range;
                auto f = [&](double tau) { return received_cap_power(tau, s.theta) - m; };
                inversions.push_back(bracketed_root(f, lo, hi, top - m, bottom - m));
            }
        }
        if (in_range == 0)
            throw no_root_error("no measured power is attainable for any tau in [1 + 1e-9, " +
                                std::to_string(tau_max) + "]");

        const auto [min_it, max_it] = std::minmax_element(inversions.begin(), inversions.end());
        const double t_lo = *min_it;
        const double t_hi = *max_it;
        if (t_hi - t_lo <= 4.0 * std::numeric_limits<double>::epsilon() * t_hi)
            return 0.5 * (t_lo + t_hi);

        // Stationarity of the squared-residual sum: h(tau) = -sum (m - P) dP/dtau, increasing through the minimum.
        auto h = [&](double tau) {
            double sum = 0.0;
            for (const auto &s : used)
                sum -= (s.power - received_cap_power(tau, s.theta)) * received_cap_power_dtau(tau, s.theta);
            return sum;
        };
        const double h_lo = h(t_lo);
        const double h_hi = h(t_hi);
        if (h_lo >= 0.0)
            return t_lo;
        if (h_hi <= 0.0)
            return t_hi;
        return bracketed_root(h, t_lo, t_hi, h_lo, h_hi);
    }

    CrlbFactor crlb_sphere(double tau)
    {
        if (!(tau >= 1.0) || !std::isfinite(tau))
            throw domain_error("sphere CRLB needs tau >= 1");
        return {4.0 * std::pow(tau, 4) * (tau - 1.0) * (tau + 1.0)};
    }

    CrlbFactor crlb_plane(double tau)
    {
        if (!(tau >= 0.0) || !std::isfinite(tau))
            throw domain_error("planar CRLB needs tau >= 0");
        const double q = tau * tau + 1.0;
        return {4.0 * q * q * q};
    }

    double crlb_series(double tau, std::span<const double> thetas, double sigma)
    {
        if (!(tau > 1.0))
            throw domain_error("series CRLB needs tau > 1");
        double information = 0.0;
        for (const double theta : thetas)
        {
            const double d = received_cap_power_dtau(tau, theta);
            information += d * d;
        }
        if (information == 0.0)
            throw domain_error("series carries no information on tau");
        return sigma * sigma / information;
    }

    double detection_ring_width(std::size_t element_count)
    {
        const double rings = std::max(4.0, std::floor(std::sqrt(pi * static_cast<double>(element_count)) / 2.0));
        return pi / rings;
    }

    AngleMeasurement simulate_angle_measurement(double true_tau, double radius, const AngleNoise &noise,
                                                std::uint64_t seed)
    {
        if (!(true_tau > 1.0))
            throw domain_error("angle simulation needs tau > 1");
        if (noise.element_count < 100)
            throw domain_error("angle simulation needs at least 100 elements");
        if (!(noise.sigma_p >= 0.0) || !(noise.threshold_mult >= 0.0))
            throw domain_error("noise level and threshold multiplier must be non-negative");

        const LisGeometry geom = LisGeometry::sphere(radius);
        const TerminalPose terminal = TerminalPose::on_axis(true_tau * radius);
        const double theta0 = visibility_angle(true_tau);
        const double element_area = geom.area() / static_cast<double>(noise.element_count);
        const double width = detection_ring_width(noise.element_count);
        const auto rings = static_cast<std::size_t>(std::ceil((pi / 2.0) / width));

        std::vector<double> ring_sum(rings, 0.0);
        std::vector<std::size_t> ring_count(rings, 0);
        Rng rng(seed);
        for (const auto &u : fibonacci_sphere(noise.element_count))
        {
            const double theta = std::atan2(std::hypot(u.x(), u.y()), u.z());
            if (theta >= pi / 2.0)
                break; // lattice is ordered by polar angle; the lower hemisphere never sees the terminal
            const SpherePoint p{theta, 0.0};
            double power = theta <= theta0 ? power_density(p, terminal, geom) * element_area : 0.0;
            power += noise.sigma_p * rng.normal();
            const auto k = std::min(rings - 1, static_cast<std::size_t>(theta / width));
            ring_sum[k] += power;
            ++ring_count[k];
        }

        const double threshold = noise.threshold_mult * noise.sigma_p;
        for (std::size_t k = rings; k-- > 0;)
        {
            if (ring_count[k] == 0)
                continue;
            if (ring_sum[k] / static_cast<double>(ring_count[k]) > threshold)
            {
                const double centre = std::min((static_cast<double>(k) + 0.5) * width, std::nextafter(pi / 2.0, 0.0));
                return {centre, width / std::sqrt(12.0)};
            }
        }
        throw detection_failure("no ring of elements exceeds the detection threshold " + std::to_string(threshold));
    }
}
