#include "slabio/thermal.hpp"

#include <cmath>
#include <sstream>

namespace slabio {

double bose(double omega, double T, const Physical& ph) {
    if (!(omega > 0)) throw DomainError("bose: omega must be positive");
    if (!(T >= 0) || !std::isfinite(T)) throw DomainError("bose: temperature must be non-negative");
    if (T == 0.0) return 0.0;
    return 1.0 / std::expm1(ph.hbar * omega / (ph.kB * T));
}

namespace {

double noise_sum(const CommutatorSet& cs, Side side) {
    const int row = side == Side::zero ? 0 : 1;
    double v = 0.0;
    for (const auto& L : cs.layers) {
        const Eigen::RowVector2cd f = L.phi_far.row(row);
        v += (f * L.C_far * f.adjoint())(0, 0).real();
    }
    return v;
}

}  // namespace

double emission_w(const CommutatorSet& cs, double T, Side side) {
    const double n = bose(cs.omega, T);
    const double s = noise_sum(cs, side);
    // Each term is a PSD quadratic form; a negative sum means a broken convention.
    const double scale = std::abs(side == Side::zero ? cs.c_out0 : cs.c_outn);
    if (s < -1e-12 * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "negative thermal emission " << s << " on side " << (side == Side::zero ? "0" : "n");
        throw ConsistencyError(os.str());
    }
    return n * std::max(s, 0.0);
}

double emission_w(const ModeContext& ctx, const Stack& st, Pol q, double T, Side side) {
    return emission_w(commutator_set(ctx, st, q), T, side);
}

double emissivity(const CommutatorSet& cs, Side side) {
    const double c_in = side == Side::zero ? cs.c_in0 : cs.c_inn;
    if (!(c_in > 0)) throw PreconditionError("emissivity needs a propagating input on that side");
    return noise_sum(cs, side) / c_in;
}

double kirchhoff_residual(const ModeContext& ctx, const Stack& st, Pol q, double T) {
    const int n = ctx.n();
    if (ctx.eps.front() != cplx(1.0) || ctx.eps.back() != cplx(1.0))
        throw PreconditionError("kirchhoff_residual needs vacuum outer media");
    if (regime(ctx, 0) != Regime::propagating || regime(ctx, n) != Regime::propagating)
        throw PreconditionError("kirchhoff_residual needs a propagating mode; evanescent modes obey 2 Im r / |beta|");
    const auto cs = commutator_set(ctx, st, q);
    const double nb = bose(ctx.omega, T);
    const Mat2& S = cs.io.S;
    double worst = 0.0;
    for (Side side : {Side::zero, Side::n}) {
        const int row = side == Side::zero ? 0 : 1;
        const double c_in = side == Side::zero ? cs.c_in0 : cs.c_inn;
        // At T = 0 the balance is checked on the temperature-independent emissivity.
        const double e = nb > 0 ? emission_w(cs, T, side) / (nb * c_in) : emissivity(cs, side);
        const double res = std::abs(e + std::norm(S(row, 0)) + std::norm(S(row, 1)) - 1.0);
        worst = std::max(worst, res);
    }
    return worst;
}

}  // namespace slabio
