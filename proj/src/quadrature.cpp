// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/quadrature.hpp"
#include "slis/errors.hpp"
#include "slis/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

namespace slis
{
    QuadratureSpec QuadratureSpec::adaptive(double rel_tol, double abs_tol)
    {
        QuadratureSpec q;
        q.method = QuadratureMethod::adaptive;
        q.rel_tol = rel_tol;
        q.abs_tol = abs_tol;
        return q;
    }

    QuadratureSpec QuadratureSpec::fixed_tensor(std::size_t max_evals)
    {
        QuadratureSpec q;
        q.method = QuadratureMethod::fixed_tensor;
        q.max_evals = max_evals;
        return q;
    }

    QuadratureSpec QuadratureSpec::monte_carlo(std::size_t samples, std::uint64_t seed)
    {
        QuadratureSpec q;
        q.method = QuadratureMethod::monte_carlo;
        q.max_evals = samples;
        q.seed = seed;
        return q;
    }

    void QuadratureSpec::validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw domain_error("quadrature tolerances must be positive");
        if (max_evals < 1)
            throw domain_error("quadrature budget must allow at least one evaluation");
    }

    namespace quad
    {
        void EvalBudget::charge(std::size_t n)
        {
            used_ += n;
            if (used_ > limit_)
                throw budget_exhausted("quadrature exceeded its budget of " + std::to_string(limit_) +
                                       " evaluations before reaching tolerance");
        }

        namespace
        {
            // Kronrod 15-point abscissae (positive half) and weights, with the embedded Gauss 7-point weights.
            constexpr std::array<double, 8> xk = {
                0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
            constexpr std::array<double, 8> wk = {
                0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
            constexpr std::array<double, 4> wg = {
                0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

            struct Segment
            {
                double a, b, value, error;
                bool operator<(const Segment &o) const { return error < o.error; }
            };

            Segment kronrod(const Integrand &f, double a, double b, EvalBudget &budget)
            {
                budget.charge(15);
                const double c = 0.5 * (a + b);
                const double h = 0.5 * (b - a);
                const double fc = f(c);
                double k = wk[7] * fc;
                double g = wg[3] * fc;
                for (int j = 0; j < 7; ++j)
                {
                    const double dx = h * xk[j];
                    const double sum = f(c - dx) + f(c + dx);
                    k += wk[j] * sum;
                    if (j % 2 == 1)
                        g += wg[j / 2] * sum;
                }
                return {a, b, k * h, std::abs((k - g) * h)};
            }
        }

        IntegrationResult gauss_kronrod(const Integrand &f, double a, double b, double abs_tol, double rel_tol,
                                        EvalBudget &budget)
        {
            if (a == b)
                return {0.0, 0.0, 0};
            const std::size_t used_before = budget.used();

            std::priority_queue<Segment> active;
            active.push(kronrod(f, a, b, budget));
            double value = active.top().value;
            double error = active.top().error;
            double frozen_value = 0.0; // segments too narrow to split further
            double frozen_error = 0.0;

            while (!active.empty() && error > std::max(abs_tol, rel_tol * std::abs(value)))
            {
                const Segment worst = active.top();
                active.pop();
                const double mid = 0.5 * (worst.a + worst.b);
                if (!(mid > worst.a && mid < worst.b) ||
                    std::abs(worst.b - worst.a) < 1e-14 * std::max(std::abs(worst.a), std::abs(worst.b)))
                {
                    frozen_value += worst.value;
                    frozen_error += worst.error;
                    continue;
                }
                const Segment left = kronrod(f, worst.a, mid, budget);
                const Segment right = kronrod(f, mid, worst.b, budget);
                value += left.value + right.value - worst.value;
                error += left.error + right.error - worst.error;
                active.push(left);
                active.push(right);
            }

            // Re-sum to shed the drift of the running updates.
            value = frozen_value;
            error = frozen_error;
            while (!active.empty())
            {
                value += active.top().value;
                error += active.top().error;
                active.pop();
            }
            return {value, error, budget.used() - used_before};
        }

        Rule gauss_legendre(std::size_t n)
        {
            if (n == 0)
                throw domain_error("Gauss-Legendre rule needs at least one node");
            if (n == 1)
                return {{0.0}, {2.0}};
            Rule rule;
            rule.nodes.resize(n);
            rule.weights.resize(n);
            const std::size_t m = (n + 1) / 2;
            for (std::size_t i = 0; i < m; ++i)
            {
                // Tricomi initial guess, then Newton on P_n
                double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
                double dp = 0.0;
                for (int iter = 0; iter < 100; ++iter)
                {
                    double p0 = 1.0, p1 = x;
                    for (std::size_t k = 2; k <= n; ++k)
                    {
                        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                        p0 = p1;
                        p1 = pk;
                    }
                    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                    const double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16 || dx == 0.0)
                        break;
                }
                // recompute derivative at the converged node
                double p0 = 1.0, p1 = x;
                for (std::size_t k = 2; k <= n; ++k)
                {
                    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                    p0 = p1;
                    p1 = pk;
                }
                dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                const double w = 2.0 / ((1.0 - x * x) * dp * dp);
                rule.nodes[i] = -x;
                rule.nodes[n - 1 - i] = x;
                rule.weights[i] = w;
                rule.weights[n - 1 - i] = w;
            }
            if (n % 2 == 1)
                rule.nodes[n / 2] = 0.0;
            return rule;
        }
    }

    namespace
    {
        using quad::EvalBudget;

        // Inner integrals of nested rules run a decade tighter than the outer one.
        constexpr double nested_tightening = 0.1;

        constexpr std::size_t mc_block = 1u << 16;

        // Mean and standard error of f over `samples` draws; the stream is cut into fixed blocks with their own
        // seeded engines so the result does not depend on how blocks are scheduled.
        template <typename Sampler>
        IntegrationResult monte_carlo_mean(std::size_t samples, std::uint64_t seed, double measure, Sampler &&sample)
        {
            double mean = 0.0, m2 = 0.0;
            std::size_t count = 0;
            for (std::uint64_t block = 0; count < samples; ++block)
            {
                Rng engine(derive_seed(seed, {block}));
                const std::size_t n = std::min(mc_block, samples - count);
                for (std::size_t i = 0; i < n; ++i)
                {
                    const double x = sample(engine);
                    ++count;
                    const double delta = x - mean;
                    mean += delta / static_cast<double>(count);
                    m2 += delta * (x - mean);
                }
            }
            const double variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
            return {measure * mean, measure * std::sqrt(variance / static_cast<double>(count)), count};
        }

        void check_cap(double tau, double theta_hat)
        {
            if (!(theta_hat >= 0.0))
                throw domain_error("cap angle must be non-negative");
            const double theta0 = visibility_angle(tau);
            if (theta_hat > theta0 + visibility_slack)
                throw visibility_error("cap angle " + std::to_string(theta_hat) + " exceeds theta0 " +
                                       std::to_string(theta0));
        }

        // Tensor rule over [0, theta_hat] x [0, 2 pi): Gauss-Legendre in the first variable, uniform midpoints
        // (exact for trigonometric polynomials) in the azimuth.
        template <typename F>
        double tensor_rule(F &&f, double upper, std::size_t n)
        {
            const auto gl = quad::gauss_legendre(n);
            const double h = 0.5 * upper;
            const double dphi = two_pi / static_cast<double>(n);
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double x = h * (gl.nodes[i] + 1.0);
                double ring = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    ring += f(x, (static_cast<double>(j) + 0.5) * dphi);
                sum += gl.weights[i] * ring * dphi;
            }
            return sum * h;
        }

        template <typename F>
        IntegrationResult tensor_with_estimate(F &&f, double upper, std::size_t max_evals)
        {
            // n^2 + (n/2)^2 evaluations in total
            const auto n = static_cast<std::size_t>(std::sqrt(static_cast<double>(max_evals) / 1.25));
            if (n < 2)
                throw budget_exhausted("fixed tensor rule needs a budget of at least 5 evaluations");
            const double fine = tensor_rule(f, upper, n);
            const double coarse = tensor_rule(f, upper, n / 2);
            return {fine, std::abs(fine - coarse), n * n + (n / 2) * (n / 2)};
        }

        // Adaptive nested 2D integral over [0, upper] x [0, 2 pi)
        template <typename F>
        IntegrationResult nested_2d(F &&f, double upper, const QuadratureSpec &q, EvalBudget &budget)
        {
            const double inner_rel = q.rel_tol * nested_tightening;
            const double inner_abs = q.abs_tol * nested_tightening / upper;
            auto outer = [&](double x) {
                return quad::gauss_kronrod([&](double phi) { return f(x, phi); }, 0.0, two_pi, inner_abs, inner_rel,
                                           budget)
                    .value;
            };
            return quad::gauss_kronrod(outer, 0.0, upper, q.abs_tol, q.rel_tol, budget);
        }
    }

    IntegrationResult integrate_sphere_power(double tau, double theta_hat, const LisGeometry &geom,
                                             const QuadratureSpec &quad)
    {
        quad.validate();
        if (!geom.is_sphere())
            throw domain_error("integrate_sphere_power requires a spherical geometry");
        check_cap(tau, theta_hat);
        const double theta0 = visibility_angle(tau);
        theta_hat = std::min(theta_hat, theta0);
        if (theta_hat == 0.0)
            return {0.0, 0.0, 0};

        const double R = geom.radius();
        const TerminalPose terminal = TerminalPose::on_axis(tau * R);
        auto density = [&](double theta, double phi) {
            // clamp rounding excursions of the integration nodes past theta0
            return power_density(SpherePoint{std::min(theta, theta0), phi}, terminal, geom) * R * R *
                   std::sin(theta);
        };

        switch (quad.method)
        {
        case QuadratureMethod::adaptive:
        {
            // The canonical integrand does not depend on phi: the azimuth integral is exactly 2 pi.
            EvalBudget budget(quad.max_evals);
            return quad::gauss_kronrod([&](double theta) { return two_pi * density(theta, 0.0); }, 0.0, theta_hat,
                                       quad.abs_tol, quad.rel_tol, budget);
        }
        case QuadratureMethod::fixed_tensor:
            return tensor_with_estimate(density, theta_hat, quad.max_evals);
        case QuadratureMethod::monte_carlo:
        {
            // Area-uniform on the cap: u = cos(theta) uniform on [cos(theta_hat), 1]
            const double u_min = std::cos(theta_hat);
            const double cap_area = two_pi * R * R * (1.0 - u_min);
            return monte_carlo_mean(quad.max_evals, quad.seed, cap_area, [&](Rng &engine) {
                const double u = u_min + (1.0 - u_min) * engine.uniform();
                const double phi = two_pi * engine.uniform();
                const double theta = std::min(std::acos(std::clamp(u, -1.0, 1.0)), theta0);
                return power_density(SpherePoint{theta, phi}, terminal, geom);
            });
        }
        }
        throw domain_error("unknown quadrature method");
    }

    IntegrationResult integrate_sphere_power_rotated(const TerminalPose &terminal, double theta_hat,
                                                     const LisGeometry &geom, const QuadratureSpec &quad)
    {
        quad.validate();
        if (!geom.is_sphere())
            throw domain_error("integrate_sphere_power_rotated requires a spherical geometry");
        const double R = geom.radius();
        const double tau = terminal.tau(geom);
        check_cap(tau, theta_hat);
        if (theta_hat == 0.0)
            return {0.0, 0.0, 0};

        // Orthonormal frame (e1, e2, d) with d along the terminal direction
        const Eigen::Vector3d d = terminal.direction();
        const Eigen::Vector3d helper = std::abs(d.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
        const Eigen::Vector3d e1 = (helper - helper.dot(d) * d).normalized();
        const Eigen::Vector3d e2 = d.cross(e1);
        const Eigen::Vector3d &t = terminal.position();

        auto point_power = [&](double theta, double phi) {
            const double st = std::sin(theta);
            const Eigen::Vector3d p = R * (st * std::cos(phi) * e1 + st * std::sin(phi) * e2 + std::cos(theta) * d);
            const double eta = distance_cartesian(p, t);
            const double c = std::max(cos_aoa_cartesian(p, t, R), 0.0);
            return c / (4.0 * pi * eta * eta);
        };
        auto density = [&](double theta, double phi) { return point_power(theta, phi) * R * R * std::sin(theta); };

        switch (quad.method)
        {
        case QuadratureMethod::adaptive:
        {
            EvalBudget budget(quad.max_evals);
            return nested_2d(density, theta_hat, quad, budget);
        }
        case QuadratureMethod::fixed_tensor:
            return tensor_with_estimate(density, theta_hat, quad.max_evals);
        case QuadratureMethod::monte_carlo:
        {
            const double u_min = std::cos(theta_hat);
            const double cap_area = two_pi * R * R * (1.0 - u_min);
            return monte_carlo_mean(quad.max_evals, quad.seed, cap_area, [&](Rng &engine) {
                const double u = u_min + (1.0 - u_min) * engine.uniform();
                const double phi = two_pi * engine.uniform();
                return point_power(std::acos(std::clamp(u, -1.0, 1.0)), phi);
            });
        }
        }
        throw domain_error("unknown quadrature method");
    }

    IntegrationResult integrate_disk_power(double tau, double theta, double disk_radius, const QuadratureSpec &quad)
    {
        quad.validate();
        const LisGeometry geom = LisGeometry::disk(disk_radius);
        if (!(tau > 0.0) || !std::isfinite(tau))
            throw domain_error("disk tau must be positive and finite");
        if (!(theta >= 0.0 && theta < pi / 2.0))
            throw domain_error("terminal elevation must lie in [0, pi/2)");
        if (tau * std::cos(theta) < 1e-9)
            throw domain_error("terminal touches the disk plane (tau cos(theta) < 1e-9)");

        const double z = tau * disk_radius;
        const TerminalPose terminal(Eigen::Vector3d(0.0, z * std::sin(theta), z * std::cos(theta)));
        auto density = [&](double r, double phi) { return r * power_density(DiskPoint{r, phi}, terminal, geom); };

        switch (quad.method)
        {
        case QuadratureMethod::adaptive:
        {
            EvalBudget budget(quad.max_evals);
            return nested_2d(density, disk_radius, quad, budget);
        }
        case QuadratureMethod::fixed_tensor:
            return tensor_with_estimate(density, disk_radius, quad.max_evals);
        case QuadratureMethod::monte_carlo:
        {
            const double area = pi * disk_radius * disk_radius;
            return monte_carlo_mean(quad.max_evals, quad.seed, area, [&](Rng &engine) {
                const double r = disk_radius * std::sqrt(engine.uniform());
                const double phi = two_pi * engine.uniform();
                return power_density(DiskPoint{r, phi}, terminal, geom);
            });
        }
        }
        throw domain_error("unknown quadrature method");
    }

    IntegrationResult integrate_disk_power_elevation_average(double tau, double disk_radius,
                                                             const QuadratureSpec &quad)
    {
        quad.validate();
        if (!(tau > 1e-9) || !std::isfinite(tau))
            throw domain_error("disk tau must exceed 1e-9");
        // Stop where the terminal would touch the plane; the omitted sliver is below 1e-9 in width.
        const double upper = std::acos(1e-9 / tau);

        QuadratureSpec inner = quad;
        inner.rel_tol = quad.rel_tol * nested_tightening;
        inner.abs_tol = quad.abs_tol * nested_tightening;
        std::size_t inner_evals = 0;
        EvalBudget budget(quad.max_evals);
        auto f = [&](double theta) {
            inner.max_evals = quad.max_evals - std::min(quad.max_evals, budget.used() + inner_evals);
            if (inner.max_evals == 0)
                throw budget_exhausted("elevation average exceeded its evaluation budget");
            const auto r = integrate_disk_power(tau, theta, disk_radius, inner);
            inner_evals += r.evaluations;
            return r.value;
        };
        auto result = quad::gauss_kronrod(f, 0.0, upper, quad.abs_tol, quad.rel_tol, budget);
        const double scale = 2.0 / pi;
        return {result.value * scale, result.error * scale, result.evaluations + inner_evals};
    }
}
