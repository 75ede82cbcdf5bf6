// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#ifndef SLIS_RANDOM_HPP
#define SLIS_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace slis
{
    // splitmix64 finalizer; mixes a seed with stream indices into an independent 64-bit seed
    std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams);

    // Seeded generator whose uniform and normal draws are defined here rather than by the standard library's
    // distributions, so a seed reproduces the same stream on every toolchain.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed);

        double uniform(); // [0, 1)
        double normal();  // standard normal, Box-Muller without caching

    private:
        std::mt19937_64 engine_;
    };
}

#endif
