// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_REFLECTOR_HPP
#define SLIS_REFLECTOR_HPP

#include "slis/geometry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace slis
{
    struct Cap
    {
        Eigen::Vector3d axis = Eigen::Vector3d::UnitZ(); // unit vector
        double half_angle = 0.0;                          // [rad]

        bool contains(const Eigen::Vector3d &unit) const;
    };

    // Sphere split into a receiving cap facing the base station and a transmitting cap facing the terminal.
    // Element k of the receive list feeds element k of the transmit list; both lists are ordered by angular
    // distance from their cap axis, and elements beyond the shorter list stay idle.
    struct ReflectorLayout
    {
        double radius = 1.0;
        std::vector<Eigen::Vector3d> elements; // unit vectors of the full lattice
        double element_area = 0.0;             // 4 pi R^2 / elements.size()
        Cap rx_cap;
        Cap tx_cap;
        std::vector<std::size_t> rx_elements; // active receive elements, indices into `elements`
        std::vector<std::size_t> tx_elements; // active transmit elements, same length as rx_elements

        std::size_t active_count() const { return tx_elements.size(); }
        Eigen::Vector3d element_position(std::size_t index) const { return radius * elements[index]; }
    };

    // Per transmit-element phase shift, in [0, 2 pi)
    struct PhaseProfile
    {
        std::vector<double> shifts;
    };

    inline constexpr double cap_margin = 0.01; // [rad] gap kept between the caps by default

    // Default half-angle: min(theta0, half the angular separation - cap_margin)
    double default_cap_half_angle(const TerminalPose &pose, const TerminalPose &other, double radius);

    // Builds caps and pairs elements on an element_count lattice. Explicit half-angles override the defaults.
    // Throws domain_error when the caps overlap or a cap exceeds the visibility angle of its pose.
    ReflectorLayout make_reflector_layout(double radius, std::size_t element_count, const TerminalPose &bs_pose,
                                          const TerminalPose &ue_pose,
                                          std::optional<double> rx_half_angle = std::nullopt,
                                          std::optional<double> tx_half_angle = std::nullopt);

    // Grows the lattice until at least `active` pairs exist and keeps exactly the `active` pairs nearest the
    // cap axes.
    ReflectorLayout make_reflector_layout_with_active(double radius, std::size_t active,
                                                      const TerminalPose &bs_pose, const TerminalPose &ue_pose,
                                                      std::optional<double> rx_half_angle = std::nullopt,
                                                      std::optional<double> tx_half_angle = std::nullopt);

    // Per-pair link quantities
    struct PairChannel
    {
        double a_in = 0.0;   // base station -> receive element amplitude, sqrt(|s|^2 A)
        double a_out = 0.0;  // transmit element -> terminal amplitude (reciprocal model)
        double eta_in = 0.0; // [m]
        double eta_out = 0.0;
    };

    // Throws visibility_error when an active element cannot see its pose.
    std::vector<PairChannel> pair_channels(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                           const TerminalPose &ue_pose);

    // chi_n = 2 pi (eta_in + eta_out) / lambda mod 2 pi, computed from (possibly estimated) poses
    PhaseProfile design_phase_profile(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                      const TerminalPose &ue_pose, const RadioConfig &radio);

    PhaseProfile zero_phase_profile(const ReflectorLayout &layout);

    // End-to-end phase of every pair after the shifts, wrapped to (-pi, pi]
    std::vector<double> residual_phases(const ReflectorLayout &layout, const PhaseProfile &profile,
                                        const TerminalPose &bs_pose, const TerminalPose &ue_pose,
                                        const RadioConfig &radio);

    // |sum_n a_in a_out exp(j(-2 pi (eta_in + eta_out)/lambda + chi_n))|^2 with the true poses
    double evaluate_reflected_power(const ReflectorLayout &layout, const PhaseProfile &profile,
                                    const TerminalPose &bs_pose, const TerminalPose &ue_pose,
                                    const RadioConfig &radio);

    // sum_n (a_in a_out)^2, the expected power of a sum with independent uniform phases
    double incoherent_reference_power(const ReflectorLayout &layout, const TerminalPose &bs_pose,
                                      const TerminalPose &ue_pose);
}

#endif
