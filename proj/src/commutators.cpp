#include "slabio/commutators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slabio {

namespace {

constexpr cplx I{0.0, 1.0};

double abs2(cplx z) { return std::norm(z); }

// Same-side output commutator in closed form. For side n the caller passes the
// mirrored quantities: beta_n, k_n, r_{n/0}, and e_-^{(n)} in the role of e_+^{(0)}.
// The magnitude sum of the terms goes to *scale.
cplx closed_c_out(Pol q, double k, cplx b, cplx kk, cplx r, const Vec3& e_in, const Vec3& e_other, double c_in,
                  double* scale) {
    if (q == Pol::s) {
        const double t1 = b.real() / abs2(b), t2 = 2.0 * b.imag() * r.imag() / abs2(b);
        *scale = std::abs(t1) + 2.0 * std::abs(b.imag() * r) / abs2(b);
        return t1 + t2;
    }
    const double K = abs2(kk);
    const double k2 = k * k;
    const cplx a = dotu(e_other, e_in);
    const cplx t1 = r / (b * K) * (k2 * kk * kk / (std::conj(kk) * std::conj(kk)) - abs2(b));
    const cplx t2 = std::conj(r) / (std::conj(b) * K) * (k2 * std::conj(kk) * std::conj(kk) / (kk * kk) - abs2(b));
    // The r-independent part reduces to c_in (1 + |a|^2); see README, "closed forms".
    const double t3 = c_in * (1.0 + abs2(a));
    const double t4 = c_in * abs2(r), t5 = c_in * abs2(a + r);
    *scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4) + std::abs(t5);
    return t1 + t2 + t3 + t4 - t5;
}

double c_in_of(cplx b, const Vec3& e) { return b.real() / abs2(b) * e.squaredNorm(); }

}  // namespace

double N0(double omega) {
    const auto& c = si();
    const double k0 = omega / c.c;
    return pi * c.hbar / c.eps0 * k0 * k0;
}

CommutatorSet commutator_set(const ModeContext& ctx, const ScatterSet& ss) {
    const int n = ctx.n();
    const Pol q = ss.q;
    CommutatorSet cs;
    cs.q = q;
    cs.omega = ctx.omega;
    cs.n0 = N0(ctx.omega);
    const cplx b0 = ctx.beta.front(), bn = ctx.beta.back();
    const cplx k0 = ctx.kj.front(), kn = ctx.kj.back();
    if (b0 == cplx(0.0) || bn == cplx(0.0))
        throw DomainError("commutator coefficients are singular on the light line (beta = 0)");
    cs.beta0 = b0;
    cs.betan = bn;
    const Vec3& e0p = ctx.e(q, 0, +1);
    const Vec3& e0m = ctx.e(q, 0, -1);
    const Vec3& enp = ctx.e(q, n, +1);
    const Vec3& enm = ctx.e(q, n, -1);
    cs.c_in0 = c_in_of(b0, e0p);
    cs.c_inn = c_in_of(bn, enm);

    const double k = ctx.k;
    cs.c_out0 = closed_c_out(q, k, b0, k0, ss.r0n, e0p, e0m, cs.c_in0, &cs.c_out0_scale);
    cs.c_outn = closed_c_out(q, k, bn, kn, ss.rn0, enm, enp, cs.c_inn, &cs.c_outn_scale);

    const cplx t0n = ss.t0n, tn0 = ss.tn0;
    if (q == Pol::s) {
        const cplx t1 = I * b0.imag() / abs2(b0) * std::conj(t0n), t2 = -I * bn.imag() / abs2(bn) * tn0;
        cs.c_cross = t1 + t2;
        cs.c_cross_scale = std::abs(t1) + std::abs(t2);
    } else {
        const double k2 = k * k;
        const cplx t1 = tn0 / (bn * abs2(kn)) * (k2 * kn * kn / (std::conj(kn) * std::conj(kn)) - abs2(bn));
        const cplx t2 =
            std::conj(t0n) / (std::conj(b0) * abs2(k0)) * (k2 * std::conj(k0) * std::conj(k0) / (k0 * k0) - abs2(b0));
        const cplx t3 = bn.real() / abs2(bn) * tn0 * enm.squaredNorm() * std::conj(dotu(enm, enp));
        const cplx t4 = b0.real() / abs2(b0) * std::conj(t0n) * e0p.squaredNorm() * dotu(e0p, e0m);
        cs.c_cross = t1 + t2 - t3 - t4;
        cs.c_cross_scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
    }

    // A lossless stack between two evanescent sides has no input weight and no
    // noise: every output commutator vanishes identically. The closed forms reach
    // zero only up to rounding scaled by |r|, which grows without bound near
    // guided-mode poles.
    bool lossless = true;
    for (const auto& e : ctx.eps) lossless = lossless && e.imag() == 0.0;
    if (lossless && cs.c_in0 == 0.0 && cs.c_inn == 0.0) {
        cs.c_out0 = cs.c_outn = cs.c_cross = 0.0;
        cs.c_out0_scale = cs.c_outn_scale = cs.c_cross_scale = 0.0;
    }

    cs.io = io_matrix(ss);
    for (int j = 1; j < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        const cplx b = ctx.beta[u];
        const double d = ss.thickness[u];
        const double bp = b.real(), bpp = b.imag(), B2 = abs2(b);
        const Vec3& ep = ctx.e(q, j, +1);
        const Vec3& em = ctx.e(q, j, -1);
        const double Ep = ep.squaredNorm(), Em = em.squaredNorm();
        const cplx X = em.dot(ep);  // e_+ . e_-^*
        const cplx ph = ss.phase[u];

        LayerCommutator L;
        L.j = j;
        const double grow = std::expm1(2.0 * bpp * d);     // e^{2 b'' d} - 1
        const double decay = -std::expm1(-2.0 * bpp * d);  // 1 - e^{-2 b'' d}
        // e^{-2i b' d} - 1 = -2i sin(b' d) e^{-i b' d}
        const cplx cpm = 2.0 * bpp / B2 * std::sin(bp * d) * std::exp(-I * bp * d) * X;
        L.C << bp / B2 * grow * Ep, cpm, std::conj(cpm), bp / B2 * decay * Em;
        const cplx cpm_far = ph * cpm;
        L.C_far << bp / B2 * decay * Ep, cpm_far, std::conj(cpm_far), bp / B2 * decay * Em;

        if (std::abs(X.imag()) > 1e-12 * std::max(std::abs(X), 1.0))
            throw ConsistencyError("e_+ . e_-^* is not real");
        // xi^2 (|beta|^2/4) = e^{-b''d} [b' sinh(b''d) E +- b'' sin(b'd) X]
        const double even = 0.5 * bp * decay * Ep;
        const double odd = bpp * std::exp(-bpp * d) * std::sin(bp * d) * X.real();
        const double scale = std::abs(even) + std::abs(odd);
        for (int sgn : {+1, -1}) {
            double v = even + sgn * odd;
            if (v < -1e-14 * scale) {
                std::ostringstream os;
                os << "layer " << j << " (" << name(q) << "): intraplate commutator matrix is not positive "
                   << "semidefinite; the layer is not passive";
                throw PassivityError(os.str());
            }
            v = std::max(v, 0.0);
            (sgn > 0 ? L.xi_plus : L.xi_minus) = 2.0 / std::sqrt(B2) * std::sqrt(v);
        }
        const cplx back = std::exp(-I * b * d);
        L.tau << 0.5 * L.xi_plus * back, 0.5 * L.xi_minus * back, 0.5 * L.xi_plus, -0.5 * L.xi_minus;
        L.tau_far << 0.5 * L.xi_plus, 0.5 * L.xi_minus, 0.5 * L.xi_plus, -0.5 * L.xi_minus;

        const cplx D = ss.D[u];
        L.phi_far << ss.t_j0[u] * ph * ss.r_jn[u] / D, ss.t_j0[u] / D, ss.t_jn[u] / D, ss.t_jn[u] * ph * ss.r_j0[u] / D;
        cs.layers.push_back(L);
    }
    return cs;
}

CommutatorSet commutator_set(const ModeContext& ctx, const Stack& st, Pol q) {
    return commutator_set(ctx, scatter_set(ctx, st, q));
}

cplx assembled_c_out(const CommutatorSet& cs, Side side) {
    const Mat2& S = cs.io.S;
    const int row = side == Side::zero ? 0 : 1;
    cplx v = abs2(S(row, 0)) * cs.c_in0 + abs2(S(row, 1)) * cs.c_inn;
    for (const auto& L : cs.layers) {
        const Eigen::RowVector2cd f = L.phi_far.row(row);
        v += (f * L.C_far * f.adjoint())(0, 0);
    }
    return v;
}

cplx assembled_c_out(const ModeContext& ctx, const Stack& st, Pol q, Side side) {
    return assembled_c_out(commutator_set(ctx, st, q), side);
}

cplx assembled_cross(const CommutatorSet& cs) {
    const Mat2& S = cs.io.S;
    cplx v = S(0, 0) * std::conj(S(1, 0)) * cs.c_in0 + S(0, 1) * std::conj(S(1, 1)) * cs.c_inn;
    for (const auto& L : cs.layers) {
        const Eigen::RowVector2cd f0 = L.phi_far.row(0), fn = L.phi_far.row(1);
        v += (f0 * L.C_far * fn.adjoint())(0, 0);
    }
    return v;
}

cplx cross_commutator(const ModeContext& ctx, const Stack& st, Pol q) {
    return commutator_set(ctx, st, q).c_cross;
}

double closure_error(const CommutatorSet& cs, Side side) {
    const Mat2& S = cs.io.S;
    const int row = side == Side::zero ? 0 : 1;
    double terms = abs2(S(row, 0)) * cs.c_in0 + abs2(S(row, 1)) * cs.c_inn;
    for (const auto& L : cs.layers) {
        const Eigen::RowVector2d f = L.phi_far.row(row).cwiseAbs();
        terms += f * L.C_far.cwiseAbs() * f.transpose();
    }
    const cplx a = assembled_c_out(cs, side);
    const cplx c = side == Side::zero ? cs.c_out0 : cs.c_outn;
    const double scale = std::max({std::abs(a), terms, side == Side::zero ? cs.c_out0_scale : cs.c_outn_scale});
    return scale > 0 ? std::abs(c - a) / scale : 0.0;
}

double cross_closure_error(const CommutatorSet& cs) {
    const Mat2& S = cs.io.S;
    double terms = std::abs(S(0, 0) * S(1, 0)) * cs.c_in0 + std::abs(S(0, 1) * S(1, 1)) * cs.c_inn;
    for (const auto& L : cs.layers) {
        const Eigen::RowVector2d f0 = L.phi_far.row(0).cwiseAbs(), fn = L.phi_far.row(1).cwiseAbs();
        terms += f0 * L.C_far.cwiseAbs() * fn.transpose();
    }
    const cplx a = assembled_cross(cs);
    const double scale = std::max({std::abs(a), terms, cs.c_cross_scale});
    return scale > 0 ? std::abs(cs.c_cross - a) / scale : 0.0;
}

BosonizedSet bosonize(const CommutatorSet& cs) {
    const double a0 = std::abs(cs.beta0), an = std::abs(cs.betan);
    auto need = [](double c, double ab, const char* what) {
        if (!(c * ab > kBosonicFloor)) {
            std::ostringstream os;
            os << "no bosonic input operators exist: " << what << " = " << c * ab
               << " (in units of N0/|beta|); the side is evanescent";
            throw RegimeError(os.str());
        }
    };
    need(cs.c_in0, a0, "c_in on side 0");
    need(cs.c_inn, an, "c_in on side n");
    const double co0 = cs.c_out0.real(), con = cs.c_outn.real();
    need(co0, a0, "c_out on side 0");
    need(con, an, "c_out on side n");

    BosonizedSet b;
    b.q = cs.q;
    const Mat2& S = cs.io.S;
    b.S(0, 0) = std::sqrt(cs.c_in0 / co0) * S(0, 0);
    b.S(0, 1) = std::sqrt(cs.c_inn / co0) * S(0, 1);
    b.S(1, 0) = std::sqrt(cs.c_in0 / con) * S(1, 0);
    b.S(1, 1) = std::sqrt(cs.c_inn / con) * S(1, 1);
    for (const auto& L : cs.layers) {
        Mat2 f = L.phi_far * L.tau_far;
        f.row(0) /= std::sqrt(co0);
        f.row(1) /= std::sqrt(con);
        b.phi.push_back(f);
    }
    return b;
}

Mat2 bosonic_gram(const BosonizedSet& b) {
    Mat2 g = b.S * b.S.adjoint();
    for (const auto& f : b.phi) g += f * f.adjoint();
    return g;
}

double unitarity_residual(const BosonizedSet& b) {
    return (bosonic_gram(b) - Mat2::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace slabio
