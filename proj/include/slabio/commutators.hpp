#pragma once

#include <vector>

#include "slabio/io_relations.hpp"

namespace slabio {

// Every coefficient below is divided by N0 = (pi hbar / eps0) (omega/c)^2 and so
// carries units of length.
double N0(double omega);

struct LayerCommutator {
    int j = 0;
    // Rows/columns ordered (+, -).
    Mat2 C;
    // The same matrix with the + amplitude referenced to the far face z = d_j,
    // diag(e^{i beta d}, 1) C diag(e^{i beta d}, 1)^dagger. Bounded for any thickness.
    Mat2 C_far;
    double xi_plus = 0, xi_minus = 0;
    Mat2 tau;      // tau tau^dagger = C
    Mat2 tau_far;  // tau_far tau_far^dagger = C_far
    Mat2 phi_far;  // noise couplings matching C_far: phi diag(e^{-i beta d}, 1)
};

struct CommutatorSet {
    Pol q = Pol::s;
    double omega = 0;
    double n0 = 0;
    cplx beta0, betan;
    double c_in0 = 0, c_inn = 0;
    cplx c_out0, c_outn;  // closed forms
    cplx c_cross;         // [E_out^(0), E_out^(n)dagger], closed form
    // Sum of the magnitudes of the terms in each closed form. Rounding in the
    // closed value is of order machine epsilon times this.
    double c_out0_scale = 0, c_outn_scale = 0, c_cross_scale = 0;
    std::vector<LayerCommutator> layers;
    IOMatrix io;
};

CommutatorSet commutator_set(const ModeContext& ctx, const ScatterSet& ss);
CommutatorSet commutator_set(const ModeContext& ctx, const Stack& st, Pol q);

// Brute-force assembly from |r|^2 c_in + |t|^2 c_in' + sum phi C phi^dagger.
cplx assembled_c_out(const CommutatorSet& cs, Side side);
cplx assembled_c_out(const ModeContext& ctx, const Stack& st, Pol q, Side side);
cplx assembled_cross(const CommutatorSet& cs);
cplx cross_commutator(const ModeContext& ctx, const Stack& st, Pol q);

// |closed - assembled| over the larger of |assembled| and the magnitude sums of
// the terms on either side. Lossless evanescent values are exact zeros that
// both routes reach only up to rounding of their terms; this keeps them finite.
double closure_error(const CommutatorSet& cs, Side side);
double cross_closure_error(const CommutatorSet& cs);

struct BosonizedSet {
    Pol q = Pol::s;
    Mat2 S;                 // r~, t~ in the IOMatrix layout
    std::vector<Mat2> phi;  // phi~ per layer
};

// Below this c |beta| an input side counts as evanescent.
constexpr double kBosonicFloor = 1e-14;

BosonizedSet bosonize(const CommutatorSet& cs);
Mat2 bosonic_gram(const BosonizedSet& b);  // S~ S~^dagger + sum Phi~ Phi~^dagger
double unitarity_residual(const BosonizedSet& b);

}  // namespace slabio
