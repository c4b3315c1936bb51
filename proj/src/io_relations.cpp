#include "slabio/io_relations.hpp"

#include <algorithm>

#include "slabio/numeric.hpp"

namespace slabio {

namespace {
constexpr cplx I{0.0, 1.0};
}

Eigen::MatrixXcd IOMatrix::phi_block() const {
    Eigen::MatrixXcd b(2, 2 * phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) b.block(0, static_cast<Eigen::Index>(2 * j), 2, 2) = phi[j];
    return b;
}

IOMatrix io_matrix(const ScatterSet& ss) {
    IOMatrix io;
    io.q = ss.q;
    io.S << ss.r0n, ss.tn0, ss.t0n, ss.rn0;
    io.warnings = ss.warnings;
    for (int j = 1; j < ss.n(); ++j) {
        const auto u = static_cast<std::size_t>(j);
        const cplx e = ss.phase[u], D = ss.D[u];
        Mat2 f;
        f(0, 0) = ss.t_j0[u] * e * e / D * ss.r_jn[u];
        f(0, 1) = ss.t_j0[u] / D;
        f(1, 0) = ss.t_jn[u] * e / D;
        f(1, 1) = ss.t_jn[u] * e / D * ss.r_j0[u];
        io.phi.push_back(f);
    }
    return io;
}

IOMatrix io_matrix(const ModeContext& ctx, const Stack& st, Pol q) { return io_matrix(scatter_set(ctx, st, q)); }

Vec2 mean_out(const IOMatrix& io, const AmplitudeVector& a) {
    if (!a.intraplate.empty() && a.intraplate.size() != io.phi.size())
        throw DomainError("mean_out: intraplate amplitudes do not match the layer count");
    Vec2 out = io.S * a.in;
    for (std::size_t j = 0; j < a.intraplate.size(); ++j) out += io.phi[j] * a.intraplate[j];
    return out;
}

OuterAmplitudes field_outside(const ModeContext& ctx, Side side, double z, const OuterAmplitudes& at_surface,
                              const std::vector<SourceBlock>& sources) {
    if (!std::isfinite(z)) throw DomainError("field_outside: z must be finite");
    if (side == Side::zero && z > 0) throw DomainError("field_outside: z > 0 is not in region 0");
    if (side == Side::n && z < 0) throw DomainError("field_outside: z < 0 is not in region n");
    const cplx b = side == Side::zero ? ctx.beta.front() : ctx.beta.back();
    if (b == cplx(0.0)) throw DomainError("field_outside: beta = 0 on the light line");
    const cplx kappa = si().mu0 * ctx.omega / (2.0 * b);

    // Integration range between the surface and z.
    const double lo = std::min(z, 0.0), hi = std::max(z, 0.0);
    cplx acc_in = 0.0, acc_out = 0.0;
    for (const auto& s : sources) {
        if (!(s.z_hi >= s.z_lo)) throw DomainError("field_outside: source block with z_hi < z_lo");
        const double a = std::max(lo, s.z_lo), c = std::min(hi, s.z_hi);
        if (!(c > a)) continue;
        if (side == Side::zero) {
            acc_in += s.plus * exp_integral_finite(-I * b, a, c);
            acc_out += s.minus * exp_integral_finite(I * b, a, c);
        } else {
            acc_in += s.minus * exp_integral_finite(I * b, a, c);
            acc_out += s.plus * exp_integral_finite(-I * b, a, c);
        }
    }
    OuterAmplitudes r;
    if (side == Side::zero) {
        r.in = std::exp(I * b * z) * (at_surface.in + kappa * acc_in);
        r.out = std::exp(-I * b * z) * (at_surface.out - kappa * acc_out);
    } else {
        r.in = std::exp(-I * b * z) * (at_surface.in + kappa * acc_in);
        r.out = std::exp(I * b * z) * (at_surface.out - kappa * acc_out);
    }
    return r;
}

}  // namespace slabio
