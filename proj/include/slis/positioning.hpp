// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_POSITIONING_HPP
#define SLIS_POSITIONING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace slis
{
    // Measured boundary of the receiving cap
    struct AngleMeasurement
    {
        double theta0_hat = 0.0;  // [rad], in [0, pi/2]
        double sigma_theta = 0.0; // [rad], >= 0
    };

    struct RssSample
    {
        double theta = 0.0; // cap angle theta_n
        double power = 0.0; // measured cap power
    };

    // Cap powers measured over theta_n = theta0_hat / n, n = 1..N
    struct RssSeries
    {
        std::vector<RssSample> samples;
        double sigma_p = 0.0;

        // Builds the angle ladder theta0_hat / n with zero powers; fill in the measurements afterwards.
        static RssSeries ladder(double theta0_hat, std::size_t count, double sigma_p = 0.0);
        void validate() const;
    };

    // (dP/dtau)^-2; the CRLB on tau is sigma^2 * factor for a scalar RSS observation in AWGN.
    struct CrlbFactor
    {
        double factor = 0.0;
        double bound(double sigma) const { return sigma * sigma * factor; }
    };

    // Cap power actually received for a cap of angle theta: the cap beyond theta0(tau) collects nothing more,
    // so this is the cap formula at min(theta, theta0). Strictly decreasing in tau.
    double received_cap_power(double tau, double theta);
    double received_cap_power_dtau(double tau, double theta);

    // z = R / cos(theta0_hat)
    double estimate_z_from_angle(const AngleMeasurement &m, double radius);

    // Least-squares tau over [1 + 1e-9, tau_max] fitted to the series with received_cap_power as the model.
    double estimate_tau_from_rss_series(const RssSeries &series, double tau_max = 1e6);

    CrlbFactor crlb_sphere(double tau);
    CrlbFactor crlb_plane(double tau);

    // Bound on tau from a whole series: sigma^2 / sum_n (dP(tau, theta_n)/dtau)^2
    double crlb_series(double tau, std::span<const double> thetas, double sigma);

    struct AngleNoise
    {
        double sigma_p = 0.0;            // per-element power noise (standard deviation)
        std::size_t element_count = 20000;
        double threshold_mult = 3.0;     // ring detection threshold in units of sigma_p
    };

    // Width of the polar-angle rings used for boundary detection on an element_count lattice
    double detection_ring_width(std::size_t element_count);

    // Simulates cap-boundary detection on a discretized sphere (terminal on +z): per-element received power
    // plus AWGN, rings of polar angle averaged, theta0_hat = centre of the outermost ring whose mean exceeds
    // threshold_mult * sigma_p. Deterministic in seed; throws detection_failure when no ring is detected.
    AngleMeasurement simulate_angle_measurement(double true_tau, double radius, const AngleNoise &noise,
                                                std::uint64_t seed);
}

#endif
