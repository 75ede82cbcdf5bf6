// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/reflector.hpp"
#include "slis/errors.hpp"
#include "slis/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

namespace slis
{
    namespace
    {
        double angle_between(const Eigen::Vector3d &a, const Eigen::Vector3d &b)
        {
            return std::atan2(a.cross(b).norm(), a.dot(b));
        }

        double cycles_fraction(double cycles)
        {
            return cycles - std::floor(cycles);
        }

        // Wraps to (-pi, pi]
        double wrap_signed(double phase)
        {
            double w = std::remainder(phase, two_pi);
            if (w <= -pi)
                w += two_pi;
            return w;
        }

        void require_outside(const TerminalPose &pose, double radius, const char *who)
        {
            if (!(pose.distance() > radius))
                throw domain_error(std::string(who) + " must lie outside the sphere");
        }

        // Indices of the lattice points inside the cap, nearest to the axis first
        std::vector<std::size_t> cap_members(const std::vector<Eigen::Vector3d> &elements, const Cap &cap)
        {
            std::vector<std::pair<double, std::size_t>> inside;
            for (std::size_t i = 0; i < elements.size(); ++i)
            {
                const double a = angle_between(cap.axis, elements[i]);
                if (a <= cap.half_angle)
                    inside.emplace_back(a, i);
            }
            std::sort(inside.begin(), inside.end());
            std::vector<std::size_t> out;
            out.reserve(inside.size());
            for (const auto &e : inside)
                out.push_back(e.second);
            return out;
        }

        double element_amplitude(const Eigen::Vector3d &position, const TerminalPose &pose, double radius,
                                 double area, double &eta)
        {
            eta = distance_cartesian(position, pose.position());
            const double c = cos_aoa_cartesian(position, pose.position(), radius);
            if (c < -visibility_slack)
                throw visibility_error("reflector element is not visible from the pose at distance " +
                                       std::to_string(pose.distance()));
            return std::sqrt(std::max(c, 0.0) / (4.0 * pi * eta * eta) * area);
        }

        std::pair<double, double> resolve_half_angles(double radius, const TerminalPose &bs_pose,
                                                      const TerminalPose &ue_pose, std::optional<double> rx,
                                                      std::optional<double> tx)
        {
            const double separation = angle_between(bs_pose.direction(), ue_pose.direction());
            const double theta0_bs = visibility_angle(bs_pose.distance() / radius);
            const double theta0_ue = visibility_angle(ue_pose.distance() / radius);
            const double rx_angle = rx ? *rx : default_cap_half_angle(bs_pose, ue_pose, radius);
            const double tx_angle = tx ? *tx : default_cap_half_angle(ue_pose, bs_pose, radius);
            if (!(rx_angle > 0.0) || !(tx_angle > 0.0))
                throw validation_error("cap half-angles must be positive");
            if (rx_angle > theta0_bs + visibility_slack)
                throw validation_error("receive cap half-angle exceeds the base-station visibility angle");
            if (tx_angle > theta0_ue + visibility_slack)
                throw validation_error("transmit cap half-angle exceeds the terminal visibility angle");
            if (rx_angle + tx_angle >= separation)
                throw validation_error("receive and transmit caps overlap (half-angles " + std::to_string(rx_angle) +
                                       " + " + std::to_string(tx_angle) + " >= separation " +
                                       std::to_string(separation) + ")");
            return {rx_angle, tx_angle};
        }
    }

    bool Cap::contains(const Eigen::Vector3d &unit) const
    {
        return angle_between(axis, unit) <= half_angle;
    }

    double default_cap_half_angle(const TerminalPose &pose, const TerminalPose &other, double radius)
    {
        const double theta0 = visibility_angle(pose.distance() / radius);
        const double separation = angle_between(pose.direction(), other.direction());
        const double angle = std::min(theta0, 0.5 * separation - cap_margin);
        if (!(angle > 0.0))
            throw validation_error("base station and terminal directions are too close to split the sphere");
        return angle;
    }

    ReflectorLayout make_reflector_layout(double radius, std::size_t element_count, const TerminalPose &bs_pose,
                                          const TerminalPose &ue_pose, std::optional<double> rx_half_angle,
                                          std::optional<double> tx_half_angle)
    {
        if (!(radius > 0.0))
            throw domain_error("reflector radius must be positive");
        if (element_count < 1)
            throw domain_error("reflector needs at least one element");
        require_outside(bs_pose, radius, "base station");
        require_outside(ue_pose, radius, "terminal");
        const auto [rx_angle, tx_angle] = resolve_half_angles(radius, bs_pose, ue_pose, rx_half_angle, tx_half_angle);

        ReflectorLayout layout;
        layout.radius = radius;
        layout.elements = fibonacci_sphere(element_count);
        layout.element_area = 4.0 * pi * radius * radius / static_cast<double>(element_count);
        layout.rx_cap = {bs_pose.direction(), rx_angle};
        layout.tx_cap = {ue_pose.direction(), tx_angle};
        layout.rx_elements = cap_members(layout.elements, layout.rx_cap);
        layout.tx_elements = cap_members(layout.elements, layout.tx_cap);
        const std::size_t pairs = std::min(layout.rx_elements.size(), layout.tx_elements.size());
        layout.rx_elements.resize(pairs);
        layout.tx_elements.resize(pairs);
        return layout;
    }

    ReflectorLayout make_reflector_layout_with_active(double radius, std::size_t active, const TerminalPose &bs_pose,
                                                      const TerminalPose &ue_pose, std::optional<double> rx_half_angle,
                                                      std::optional<double> tx_half_angle)
    {
        if (active < 1)
            throw domain_error("reflector needs at least one active element");
        require_outside(bs_pose, radius, "base station");
        require_outside(ue_pose, radius, "terminal");
        const auto [rx_angle, tx_angle] = resolve_half_angles(radius, bs_pose, ue_pose, rx_half_angle, tx_half_angle);
        const double fraction = 0.5 * (1.0 - std::cos(std::min(rx_angle, tx_angle)));
        auto count = static_cast<std::size_t>(std::ceil(static_cast<double>(active) / fraction));
        for (;;)
        {
            auto layout = make_reflector_layout(radius, count, bs_pose, ue_pose, rx_angle, tx_angle);
            if (layout.active_count() >= active)
            {
                layout.rx_elements.resize(active);
                layout.tx_elements.resize(active);
                return layout;
            }
            count = count + count / 64 + 1;
        }
    }

    std::vector<PairChannel> pair_channels(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                           const TerminalPose &ue_pose)
    {
        std::vector<PairChannel> out(layout.active_count());
        for (std::size_t k = 0; k < out.size(); ++k)
        {
            auto &ch = out[k];
            ch.a_in = element_amplitude(layout.element_position(layout.rx_elements[k]), bs_pose, layout.radius,
                                        layout.element_area, ch.eta_in);
            ch.a_out = element_amplitude(layout.element_position(layout.tx_elements[k]), ue_pose, layout.radius,
                                         layout.element_area, ch.eta_out);
        }
        return out;
    }

    PhaseProfile design_phase_profile(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                      const TerminalPose &ue_pose, const RadioConfig &radio)
    {
        PhaseProfile profile;
        profile.shifts.reserve(layout.active_count());
        for (const auto &ch : pair_channels(layout, bs_pose, ue_pose))
        {
            const double frac = cycles_fraction((ch.eta_in + ch.eta_out) / radio.wavelength());
            double chi = two_pi * frac;
            if (chi >= two_pi)
                chi = 0.0;
            profile.shifts.push_back(chi);
        }
        return profile;
    }

    PhaseProfile zero_phase_profile(const ReflectorLayout &layout)
    {
        return {std::vector<double>(layout.active_count(), 0.0)};
    }

    std::vector<double> residual_phases(const ReflectorLayout &layout, const PhaseProfile &profile,
                                        const TerminalPose &bs_pose, const TerminalPose &ue_pose,
                                        const RadioConfig &radio)
    {
        if (profile.shifts.size() != layout.active_count())
            throw domain_error("phase profile length does not match the transmit cap");
        const auto channels = pair_channels(layout, bs_pose, ue_pose);
        std::vector<double> out(channels.size());
        for (std::size_t k = 0; k < channels.size(); ++k)
        {
            // Work in fractional cycles so long paths keep sub-nanoradian precision.
            const double path = cycles_fraction((channels[k].eta_in + channels[k].eta_out) / radio.wavelength());
            out[k] = wrap_signed(profile.shifts[k] - two_pi * path);
        }
        return out;
    }

    double evaluate_reflected_power(const ReflectorLayout &layout, const PhaseProfile &profile,
                                    const TerminalPose &bs_pose, const TerminalPose &ue_pose,
                                    const RadioConfig &radio)
    {
        const auto phases = residual_phases(layout, profile, bs_pose, ue_pose, radio);
        const auto channels = pair_channels(layout, bs_pose, ue_pose);
        std::complex<double> sum = 0.0;
        for (std::size_t k = 0; k < channels.size(); ++k)
            sum += std::polar(channels[k].a_in * channels[k].a_out, phases[k]);
        return std::norm(sum);
    }

    double incoherent_reference_power(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                      const TerminalPose &ue_pose)
    {
        double sum = 0.0;
        for (const auto &ch : pair_channels(layout, bs_pose, ue_pose))
        {
            const double a = ch.a_in * ch.a_out;
            sum += a * a;
        }
        return sum;
    }
}
