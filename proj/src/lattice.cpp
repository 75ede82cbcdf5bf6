// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/lattice.hpp"
#include "slis/errors.hpp"
#include "slis/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace slis
{
    std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n)
    {
        if (n == 0)
            throw domain_error("lattice needs at least one point");
        const double golden_angle = pi * (3.0 - std::sqrt(5.0));
        std::vector<Eigen::Vector3d> points;
        points.reserve(n);
        const double dn = static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / dn;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = std::fmod(golden_angle * static_cast<double>(i), two_pi);
            points.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
        }
        return points;
    }
}
