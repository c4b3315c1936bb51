#include "slabio/fresnel.hpp"

#include <cmath>
#include <sstream>

namespace slabio {

InterfaceCoeffs interface_rt(const ModeContext& ctx, int i, int j, Pol q, PConvention conv) {
    if (std::abs(i - j) != 1 || i < 0 || j < 0 || i > ctx.n() || j > ctx.n())
        throw DomainError("interface_rt: regions must be adjacent");
    const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
    const cplx ei = ctx.eps[ui], ej = ctx.eps[uj];
    // Identical media: no interface, even on the light line where beta_i = beta_j = 0.
    if (ei == ej) return {0.0, 1.0};
    const cplx bi = ctx.beta[ui], bj = ctx.beta[uj];
    cplx r, t, den;
    if (q == Pol::s) {
        den = bi + bj;
        if (den == cplx(0.0)) throw SingularInterfaceError("s interface denominator vanishes");
        r = (bi - bj) / den;
        t = 2.0 * bi / den;
    } else {
        den = ej * bi + ei * bj;
        if (den == cplx(0.0)) throw SingularInterfaceError("p interface denominator vanishes (surface-mode pole)");
        r = (ej * bi - ei * bj) / den;
        const double k0 = ctx.k0();
        // sqrt(eps_i eps_j) as the product of the individual roots.
        const cplx root = ctx.kj[ui] * ctx.kj[uj] / (k0 * k0);
        t = conv == PConvention::field ? 2.0 * bi * root / den : 2.0 * ej * bi / den;
    }
    if (!std::isfinite(std::abs(r)) || !std::isfinite(std::abs(t)))
        throw SingularInterfaceError("non-finite interface coefficient");
    return {r, t};
}

Smat star(const Smat& a, const Smat& b) {
    const cplx d = 1.0 - a.rr * b.rl;
    if (d == cplx(0.0)) throw SingularInterfaceError("star product at an exact resonance pole");
    Smat c;
    c.rl = a.rl + a.tlr * b.rl * a.trl / d;
    c.tlr = a.tlr * b.tlr / d;
    c.trl = b.trl * a.trl / d;
    c.rr = b.rr + b.trl * a.rr * b.tlr / d;
    return c;
}

Smat interface_smat(const ModeContext& ctx, int i, Pol q, PConvention conv) {
    const auto fw = interface_rt(ctx, i, i + 1, q, conv);
    const auto bw = interface_rt(ctx, i + 1, i, q, conv);
    return {fw.r, fw.t, bw.t, bw.r};
}

Smat propagation(cplx beta, double d) {
    const cplx e = std::exp(cplx(0.0, 1.0) * beta * d);
    return {0.0, e, e, 0.0};
}

ScatterSet scatter_set(const ModeContext& ctx, const Stack& s, Pol q) {
    const int n = ctx.n();
    if (n != s.n()) throw DomainError("scatter_set: context and stack disagree on region count");
    const auto N = static_cast<std::size_t>(n + 1);
    const auto conv = s.p_convention;

    // left[j]: region 0 up to the left edge of region j; right[j]: right edge of j to region n.
    std::vector<Smat> left(N), right(N);
    for (int j = 1; j <= n; ++j) {
        Smat acc = left[static_cast<std::size_t>(j - 1)];
        if (j > 1) acc = star(acc, propagation(ctx.beta[static_cast<std::size_t>(j - 1)], s.thickness(j - 1)));
        left[static_cast<std::size_t>(j)] = star(acc, interface_smat(ctx, j - 1, q, conv));
    }
    for (int j = n - 1; j >= 0; --j) {
        Smat acc = right[static_cast<std::size_t>(j + 1)];
        if (j + 1 < n) acc = star(propagation(ctx.beta[static_cast<std::size_t>(j + 1)], s.thickness(j + 1)), acc);
        right[static_cast<std::size_t>(j)] = star(interface_smat(ctx, j, q, conv), acc);
    }

    ScatterSet ss;
    ss.q = q;
    for (int j : ctx.light_line_layers)
        ss.warnings.push_back("layer " + std::to_string(j) + " is on its light line; beta shifted off zero");
    const Smat& whole = left[static_cast<std::size_t>(n)];
    ss.r0n = whole.rl;
    ss.t0n = whole.tlr;
    ss.tn0 = whole.trl;
    ss.rn0 = whole.rr;
    ss.beta = ctx.beta;
    for (int j = 0; j <= n; ++j) ss.thickness.push_back(s.thickness(j));
    for (std::size_t j = 0; j < N; ++j) {
        const auto& L = left[j];
        const auto& R = right[j];
        ss.r_j0.push_back(L.rr);
        ss.t_0j.push_back(L.tlr);
        ss.t_j0.push_back(L.trl);
        ss.r_jn.push_back(R.rl);
        ss.t_jn.push_back(R.tlr);
        ss.t_nj.push_back(R.trl);
        const cplx ph = propagation(ctx.beta[j], s.thickness(static_cast<int>(j))).tlr;
        ss.phase.push_back(ph);
        const cplx D = 1.0 - L.rr * R.rl * ph * ph;
        ss.D.push_back(D);
        if (std::abs(D) < 1e-14) {
            std::ostringstream os;
            os << "layer " << j << " " << name(q) << ": |D| = " << std::abs(D) << " near a resonance pole";
            ss.warnings.push_back(os.str());
        }
    }
    return ss;
}

cplx ScatterSet::xi(int a, int b) const {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (a == b) return phase[ua] / (beta[ua] * D[ua]);
    return t_0j[ua] * phase[ua] / (beta[ub] * t_0j[ub] * D[ua]);
}

cplx ScatterSet::xi_direct(int a, int b) const {
    const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    const auto un = static_cast<std::size_t>(n());
    return t_0j[ua] * phase[ua] * t_nj[ub] * phase[ub] / (beta[un] * t0n * D[ua] * D[ub]);
}

ModeSolution solve_mode(const Stack& st, double omega, double k, const Eigen::Vector2d& khat) {
    ModeSolution m{make_context(st, omega, k, khat), {}, {}};
    m.s = scatter_set(m.ctx, st, Pol::s);
    m.p = scatter_set(m.ctx, st, Pol::p);
    return m;
}

}  // namespace slabio
