// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_LATTICE_HPP
#define SLIS_LATTICE_HPP

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace slis
{
    // Spiral (Fibonacci) lattice of n unit vectors. Point i sits at z = 1 - (2i + 1)/n, so every point owns an
    // equal-area band slice of 4 pi / n and the points are ordered by increasing polar angle.
    std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n);
}

#endif
