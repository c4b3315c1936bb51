#pragma once

#include <string>
#include <vector>

#include "slabio/kinematics.hpp"

namespace slabio {

struct InterfaceCoeffs {
    cplx r, t;  // from region i into region j
};

InterfaceCoeffs interface_rt(const ModeContext& ctx, int i, int j, Pol q, PConvention conv = PConvention::field);

// Two-port scattering block. l/r name the left (smaller index) and right ports.
struct Smat {
    cplx rl{0.0}, tlr{1.0}, trl{1.0}, rr{0.0};
};

Smat star(const Smat& a, const Smat& b);
Smat interface_smat(const ModeContext& ctx, int i, Pol q, PConvention conv);  // interface i | i+1
Smat propagation(cplx beta, double d);

// Generalized coefficients of one polarization. Per-region arrays are indexed 0..n;
// the half-spaces carry the trivial values (D = 1, r_{0/0} = r_{n/n} = 0, ...).
struct ScatterSet {
    Pol q = Pol::s;
    cplx r0n, t0n, tn0, rn0;
    std::vector<cplx> r_j0, r_jn, t_0j, t_nj, t_j0, t_jn;
    std::vector<cplx> D;
    std::vector<cplx> phase;  // e^{i beta_j d_j}
    std::vector<cplx> beta;
    std::vector<double> thickness;  // 0 for the half-spaces
    std::vector<std::string> warnings;

    int n() const { return static_cast<int>(D.size()) - 1; }
    // Xi^{ab} for a >= b, the only ordering the Green kernel needs. Evaluated
    // through t_{0/n} beta_n = beta_b t_{0/b} t_{n/b} e^{i beta_b d_b} / D_b so it
    // survives an underflowing whole-stack transmission.
    cplx xi(int a, int b) const;
    // The same quantity written with the whole-stack transmission in the denominator.
    cplx xi_direct(int a, int b) const;
};

ScatterSet scatter_set(const ModeContext& ctx, const Stack& s, Pol q);

// Both polarizations of one mode, computed once and shared by the Green kernel.
struct ModeSolution {
    ModeContext ctx;
    ScatterSet s, p;
    const ScatterSet& operator[](Pol q) const { return q == Pol::s ? s : p; }
};

ModeSolution solve_mode(const Stack& st, double omega, double k, const Eigen::Vector2d& khat = {1.0, 0.0});

}  // namespace slabio
