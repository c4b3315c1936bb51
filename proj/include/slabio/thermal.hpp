#pragma once

#include "slabio/commutators.hpp"

namespace slabio {

// Bose-Einstein occupation; T = 0 gives exactly 0.
double bose(double omega, double T, const Physical& ph = si());

// Normally ordered thermal output intensity on one side, N0-normalized like
// the commutator coefficients.
double emission_w(const CommutatorSet& cs, double T, Side side);
double emission_w(const ModeContext& ctx, const Stack& st, Pol q, double T, Side side);

// Emissivity sum_j phi C phi^dagger / c_in on one side (temperature independent).
double emissivity(const CommutatorSet& cs, Side side);

// |w/(n c_in) + |r|^2 + |t|^2 - 1|, worst of the two sides. Vacuum outer media,
// propagating mode only.
double kirchhoff_residual(const ModeContext& ctx, const Stack& st, Pol q, double T);

}  // namespace slabio
