#pragma once

#include <cmath>

#include "slabio/core.hpp"

namespace slabio {

inline cplx expm1c(cplx x) {
    if (std::abs(x) < 1e-5) return x * (1.0 + x * (0.5 + x / 6.0));
    return std::exp(x) - 1.0;
}

// int_a^b e^{alpha u} du for finite a, b.
inline cplx exp_integral_finite(cplx alpha, double a, double b) {
    if (alpha == cplx(0.0)) return b - a;
    return std::exp(alpha * a) * expm1c(alpha * (b - a)) / alpha;
}

}  // namespace slabio
