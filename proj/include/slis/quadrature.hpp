// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_QUADRATURE_HPP
#define SLIS_QUADRATURE_HPP

#include "slis/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace slis
{
    enum class QuadratureMethod
    {
        adaptive,     // globally adaptive Gauss-Kronrod (7/15), nested for 2D
        fixed_tensor, // Gauss-Legendre x uniform-azimuth tensor rule, error from a half-order rule
        monte_carlo   // area-uniform sampling, error = one standard error
    };

    struct QuadratureSpec
    {
        QuadratureMethod method = QuadratureMethod::adaptive;
        double abs_tol = 1e-15;
        double rel_tol = 1e-10;
        std::size_t max_evals = 20'000'000; // integrand evaluations (samples for Monte Carlo)
        std::uint64_t seed = 0;             // Monte Carlo only

        static QuadratureSpec adaptive(double rel_tol, double abs_tol = 1e-15);
        static QuadratureSpec fixed_tensor(std::size_t max_evals);
        static QuadratureSpec monte_carlo(std::size_t samples, std::uint64_t seed);

        // Throws domain_error on non-positive tolerances or a zero budget
        void validate() const;
    };

    struct IntegrationResult
    {
        double value = 0.0;
        double error = 0.0; // estimated absolute error (standard error for Monte Carlo)
        std::size_t evaluations = 0;
    };

    namespace quad
    {
        // Shared integrand-evaluation counter; throws budget_exhausted once the limit is crossed.
        class EvalBudget
        {
        public:
            explicit EvalBudget(std::size_t limit) : limit_(limit) {}
            void charge(std::size_t n);
            std::size_t used() const { return used_; }
            std::size_t limit() const { return limit_; }

        private:
            std::size_t limit_;
            std::size_t used_ = 0;
        };

        using Integrand = std::function<double(double)>;

        // Global adaptive Gauss-Kronrod on [a, b] until error <= max(abs_tol, rel_tol |value|).
        IntegrationResult gauss_kronrod(const Integrand &f, double a, double b, double abs_tol, double rel_tol,
                                        EvalBudget &budget);

        struct Rule
        {
            std::vector<double> nodes;
            std::vector<double> weights;
        };

        // n-point Gauss-Legendre rule on [-1, 1]
        Rule gauss_legendre(std::size_t n);
    }

    // Oracle for the spherical-cap power: integrates |s|^2 R^2 sin(theta) over theta in [0, theta_hat],
    // phi in [0, 2 pi) using the pointwise field model. Requires theta_hat <= theta0(tau).
    IntegrationResult integrate_sphere_power(double tau, double theta_hat, const LisGeometry &geom,
                                             const QuadratureSpec &quad);

    // Same cap power for an arbitrarily placed terminal: the cap is centred on the terminal direction and
    // every integrand value is formed from Cartesian distances and the cosine theorem. Adaptive methods
    // integrate the full 2D (theta, phi) domain.
    IntegrationResult integrate_sphere_power_rotated(const TerminalPose &terminal, double theta_hat,
                                                     const LisGeometry &geom, const QuadratureSpec &quad);

    // Exact disk power for a terminal at (0, z sin(theta), z cos(theta)), z = tau * disk_radius; integrates
    // r |s|^2 over r in [0, disk_radius], phi in [0, 2 pi). Rejects tau cos(theta) < 1e-9.
    IntegrationResult integrate_disk_power(double tau, double theta, double disk_radius, const QuadratureSpec &quad);

    // Disk power averaged over the terminal elevation theta in [0, pi/2): (2/pi) int P(tau, theta) dtheta.
    // The outer integral is adaptive regardless of quad.method; quad governs the inner disk integrals.
    IntegrationResult integrate_disk_power_elevation_average(double tau, double disk_radius,
                                                             const QuadratureSpec &quad);
}

#endif
