#pragma once

#include <vector>

#include "slabio/stack.hpp"

namespace slabio {

// Kinematics of one (omega, k) mode in every region of a stack.
struct ModeContext {
    double omega = 0;  // rad/s
    double k = 0;      // 1/m, transverse
    Eigen::Vector2d khat{1.0, 0.0};
    std::vector<cplx> eps;
    std::vector<cplx> kj;    // sqrt(eps) omega/c, first quadrant
    std::vector<cplx> beta;  // sqrt(kj^2 - k^2), first quadrant
    std::vector<Vec3> es;    // khat x e_z, same in every region
    std::vector<Vec3> ep_plus, ep_minus;
    // Interior layers sitting exactly on their own light line (beta = 0).
    std::vector<int> light_line_layers;

    int n() const { return static_cast<int>(beta.size()) - 1; }
    double k0() const { return omega / si().c; }

    // e_{q,sign}; sign is +1 or -1.
    const Vec3& e(Pol q, int j, int sign) const;
    // Same vector for the reversed in-plane wavevector -k.
    Vec3 e_reversed(Pol q, int j, int sign) const;
};

// An interior lossless layer exactly on its own light line is a removable
// singularity of the stack response. Its beta is replaced by a small real value
// (1e-5 min(omega/c, 1/d)); everything outside the layer is even in beta_j, so
// the shift costs about 1e-10 relative. Such layers are listed in light_line_layers.
ModeContext make_context(const Stack& s, double omega, double k, const Eigen::Vector2d& khat = {1.0, 0.0});

// Branch-safe propagation constant for a given k_j^2 - k^2.
cplx propagation_constant(cplx arg);

enum class Regime { propagating, evanescent, lossy };

Regime regime(const ModeContext& ctx, int j);
const char* name(Regime r);

// Bilinear (non-conjugating) dot product.
inline cplx dotu(const Vec3& a, const Vec3& b) { return a.transpose() * b; }

}  // namespace slabio
