// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The slis Authors

#include "slis/random.hpp"
#include "slis/geometry.hpp"

#include <cmath>

namespace slis
{
    namespace
    {
        std::uint64_t splitmix64(std::uint64_t x)
        {
            x += 0x9e3779b97f4a7c15ULL;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
            return x ^ (x >> 31);
        }
    }

    std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> streams)
    {
        std::uint64_t h = splitmix64(seed);
        for (const auto s : streams)
            h = splitmix64(h ^ splitmix64(s + 0x632be59bd9b4e019ULL));
        return h;
    }

    Rng::Rng(std::uint64_t seed) : engine_(seed) {}

    double Rng::uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double Rng::normal()
    {
        // 1 - u lies in (0, 1], so the log is finite
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }
}
