#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "slabio/stack.hpp"

namespace slabio::testing {

constexpr double kLambda = 1e-6;

inline double omega_of(double lambda) { return 2.0 * pi * si().c / lambda; }
inline double k0_of(double omega) { return omega / si().c; }

inline Stack slab(cplx eps, double d, cplx outer0 = 1.0, cplx outerN = 1.0) {
    return make_stack(constant(outer0), {{d, constant(eps)}}, constant(outerN));
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// The randomized family used by the closure sweeps: 1 to 5 layers, eps' in
// [1, 6], eps'' in [0, 1] with a fifth lossless, vacuum or random outer media.
struct RandomStacks {
    std::mt19937_64 rng;
    explicit RandomStacks(std::uint64_t seed) : rng(seed) {}

    double u() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

    PermittivityModel material() {
        const double re = 1.0 + 5.0 * u();
        const double im = u() < 0.2 ? 0.0 : u();
        return constant({re, im});
    }

    Stack next() {
        const int layers = 1 + static_cast<int>(u() * 5.0) % 5;
        auto m0 = u() < 0.4 ? constant(1.0) : material();
        auto mn = u() < 0.4 ? constant(1.0) : material();
        std::vector<Layer> L;
        for (int i = 0; i < layers; ++i) L.push_back({kLambda * (0.02 + 0.5 * u()), material()});
        return make_stack(m0, L, mn);
    }
};

}  // namespace slabio::testing
