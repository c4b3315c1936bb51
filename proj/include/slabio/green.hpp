#pragma once

#include "slabio/fresnel.hpp"

namespace slabio {

enum class Dir { above, below };  // E^{j>} and E^{j<}

void check_in_region(const Stack& st, int j, double z);

// Unit-strength wave of region j. `reversed` evaluates it at -k.
Vec3 wavefun(const ModeSolution& m, const Stack& st, Pol q, int j, Dir dir, double z, bool reversed = false);

// Planar Green kernel g^{(jj')}(z, z') without the local delta term. On the
// diagonal block z >= z' takes the E^{j>} branch.
Mat3 green_kernel(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp);

// Explicit branch: above = true gives the E^{j>}(z) ... E^{j'<}(z') form.
Mat3 green_kernel_branch(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp, bool above);

enum class Rule { trapezoid, simpson };

struct QuadratureSpec {
    int nodes_per_layer = 200;  // intervals per layer, split at z and z'
    Rule rule = Rule::simpson;
};

struct GreenIdentity {
    Mat3 lhs, rhs;
    double residual = 0;  // max |lhs - rhs| / max |rhs|
};

// Integral identity of the planar kernel: layers by composite quadrature,
// half-spaces in closed form. Needs Im eps > 0 in both half-spaces.
GreenIdentity verify_green_identity(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp,
                                    const QuadratureSpec& spec = {});

}  // namespace slabio
