#pragma once

#include <vector>

#include "slabio/fresnel.hpp"

namespace slabio {

// out = S in + sum_j Phi_j e_j, rows out(0), out(n); S columns in(0), in(n).
// Phi_j columns are the layer's (+, -) intraplate amplitudes.
struct IOMatrix {
    Pol q = Pol::s;
    Mat2 S;
    std::vector<Mat2> phi;  // layers 1..n-1 at index j-1
    std::vector<std::string> warnings;

    int layers() const { return static_cast<int>(phi.size()); }
    // The 2 x 2(n-1) block form.
    Eigen::MatrixXcd phi_block() const;
};

IOMatrix io_matrix(const ScatterSet& ss);
IOMatrix io_matrix(const ModeContext& ctx, const Stack& st, Pol q);

struct AmplitudeVector {
    Vec2 in = Vec2::Zero();        // <E_in^(0)>, <E_in^(n)>
    std::vector<Vec2> intraplate;  // per layer (<E_+>, <E_->); empty means none
};

Vec2 mean_out(const IOMatrix& io, const AmplitudeVector& a);

// Piecewise-constant source projections on [z_lo, z_hi]: plus = j.e_{q+}, minus = j.e_{q-}
// in the outer medium (A/m^2 per unit k and omega).
struct SourceBlock {
    double z_lo = 0, z_hi = 0;
    cplx plus{0.0}, minus{0.0};
};

struct OuterAmplitudes {
    cplx in{0.0}, out{0.0};
};

enum class Side { zero, n };

// In/out amplitudes at z in the half-space `side`, given their values at the
// plate surface and the sources between the surface and z.
OuterAmplitudes field_outside(const ModeContext& ctx, Side side, double z, const OuterAmplitudes& at_surface,
                              const std::vector<SourceBlock>& sources = {});

}  // namespace slabio
