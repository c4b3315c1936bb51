#include "slabio/green.hpp"
#include "slabio/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slabio {

namespace {

constexpr cplx I{0.0, 1.0};

double sigma(Pol q) { return q == Pol::p ? 1.0 : -1.0; }

// int_a^b e^{alpha u} du, a or b possibly infinite.
cplx exp_integral(cplx alpha, double a, double b) {
    const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
    if (lo_inf && hi_inf) throw DomainError("exp_integral over the whole line");
    if (lo_inf) {
        if (!(alpha.real() > 0)) throw PreconditionError("half-space integral diverges: outer medium must absorb");
        return std::exp(alpha * b) / alpha;
    }
    if (hi_inf) {
        if (!(alpha.real() < 0)) throw PreconditionError("half-space integral diverges: outer medium must absorb");
        return -std::exp(alpha * a) / alpha;
    }
    return exp_integral_finite(alpha, a, b);
}

// g as a function of z'' in region R on one branch: P e^{i beta z''} + Q e^{-i beta z''}.
struct ExpForm {
    Mat3 P = Mat3::Zero(), Q = Mat3::Zero();
};

ExpForm exp_form(const ModeSolution& m, const Stack& st, int j, double z, int R, bool above) {
    ExpForm f;
    const auto uR = static_cast<std::size_t>(R);
    const cplx b = m.ctx.beta[uR];
    const double dR = st.thickness(R);
    for (Pol q : {Pol::s, Pol::p}) {
        const auto& ss = m[q];
        const Vec3 ep = m.ctx.e_reversed(q, R, +1), em = m.ctx.e_reversed(q, R, -1);
        if (above) {
            const Vec3 A = (0.5 * I * sigma(q) * ss.xi(j, R)) * wavefun(m, st, q, j, Dir::above, z);
            f.P += A * (ss.r_j0[uR] * ep).transpose();
            f.Q += A * em.transpose();
        } else {
            const Vec3 A = (0.5 * I * sigma(q) * ss.xi(R, j)) * wavefun(m, st, q, j, Dir::below, z);
            f.P += A * (std::exp(-I * b * dR) * ep).transpose();
            f.Q += A * (ss.r_jn[uR] * std::exp(I * b * dR) * em).transpose();
        }
    }
    return f;
}

// int_a^b [P1 e^{ibu} + Q1 e^{-ibu}] [P2 e^{ibu} + Q2 e^{-ibu}]^dagger du
Mat3 exp_product_integral(const ExpForm& f1, const ExpForm& f2, cplx b, double lo, double hi) {
    Mat3 out = Mat3::Zero();
    auto add = [&](const Mat3& A, const Mat3& B, cplx alpha) {
        Mat3 AB = A * B.adjoint();
        if (AB.cwiseAbs().maxCoeff() == 0.0) return;
        out += AB * exp_integral(alpha, lo, hi);
    };
    add(f1.P, f2.P, cplx(-2.0 * b.imag(), 0.0));
    add(f1.P, f2.Q, cplx(0.0, 2.0 * b.real()));
    add(f1.Q, f2.P, cplx(0.0, -2.0 * b.real()));
    add(f1.Q, f2.Q, cplx(2.0 * b.imag(), 0.0));
    return out;
}

}  // namespace

void check_in_region(const Stack& st, int j, double z) {
    const int n = st.n();
    if (j < 0 || j > n) throw DomainError("region index out of range");
    if (!std::isfinite(z)) throw DomainError("z must be finite");
    if (j == 0 && z > 0) throw DomainError("z > 0 is outside region 0");
    if (j == n && z < 0) throw DomainError("z < 0 is outside region n");
    if (j > 0 && j < n && (z < 0 || z > st.thickness(j)))
        throw DomainError("z outside layer " + std::to_string(j));
}

Vec3 wavefun(const ModeSolution& m, const Stack& st, Pol q, int j, Dir dir, double z, bool reversed) {
    check_in_region(st, j, z);
    const auto uj = static_cast<std::size_t>(j);
    const auto& ss = m[q];
    const cplx b = m.ctx.beta[uj];
    const Vec3 ep = reversed ? m.ctx.e_reversed(q, j, +1) : m.ctx.e(q, j, +1);
    const Vec3 em = reversed ? m.ctx.e_reversed(q, j, -1) : m.ctx.e(q, j, -1);
    if (dir == Dir::above) {
        const double d = st.thickness(j);
        return ep * std::exp(I * b * (z - d)) + ss.r_jn[uj] * em * std::exp(-I * b * (z - d));
    }
    return em * std::exp(-I * b * z) + ss.r_j0[uj] * ep * std::exp(I * b * z);
}

Mat3 green_kernel_branch(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp, bool above) {
    Mat3 g = Mat3::Zero();
    for (Pol q : {Pol::s, Pol::p}) {
        const auto& ss = m[q];
        if (above) {
            g += (0.5 * I * sigma(q) * ss.xi(j, jp)) * wavefun(m, st, q, j, Dir::above, z) *
                 wavefun(m, st, q, jp, Dir::below, zp, true).transpose();
        } else {
            g += (0.5 * I * sigma(q) * ss.xi(jp, j)) * wavefun(m, st, q, j, Dir::below, z) *
                 wavefun(m, st, q, jp, Dir::above, zp, true).transpose();
        }
    }
    return g;
}

Mat3 green_kernel(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp) {
    const bool above = j > jp || (j == jp && z >= zp);
    return green_kernel_branch(m, st, j, jp, z, zp, above);
}

GreenIdentity verify_green_identity(const ModeSolution& m, const Stack& st, int j, int jp, double z, double zp,
                                    const QuadratureSpec& spec) {
    check_in_region(st, j, z);
    check_in_region(st, jp, zp);
    const int n = st.n();
    const auto& eps = m.ctx.eps;
    if (!(eps.front().imag() > 0) || !(eps.back().imag() > 0))
        throw PreconditionError("green identity needs Im eps > 0 in both outer media; set eps'' > 0");
    if (spec.nodes_per_layer < 2) throw DomainError("need at least two quadrature intervals per layer");
    const double k0 = m.ctx.k0();

    // Pieces of region R between the breakpoints where either kernel switches branch.
    auto pieces = [&](int R, double lo, double hi) {
        std::vector<double> cuts{lo, hi};
        if (j == R && z > lo && z < hi) cuts.push_back(z);
        if (jp == R && zp > lo && zp < hi) cuts.push_back(zp);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        return cuts;
    };
    auto branch = [&](int src, double zs, int R, double mid) { return src > R || (src == R && zs >= mid); };

    Mat3 lhs = Mat3::Zero();
    for (int R = 0; R <= n; ++R) {
        const double w = k0 * k0 * eps[static_cast<std::size_t>(R)].imag();
        if (w == 0.0) continue;
        if (R == 0 || R == n) {
            const double inf = std::numeric_limits<double>::infinity();
            const auto cuts = R == 0 ? pieces(R, -inf, 0.0) : pieces(R, 0.0, inf);
            for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
                const double a = cuts[i], b = cuts[i + 1];
                const double mid = std::isinf(a) ? b - 1.0 : (std::isinf(b) ? a + 1.0 : 0.5 * (a + b));
                const auto f1 = exp_form(m, st, j, z, R, branch(j, z, R, mid));
                const auto f2 = exp_form(m, st, jp, zp, R, branch(jp, zp, R, mid));
                lhs += w * exp_product_integral(f1, f2, m.ctx.beta[static_cast<std::size_t>(R)], a, b);
            }
            continue;
        }
        const double d = st.thickness(R);
        const auto cuts = pieces(R, 0.0, d);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            const double mid = 0.5 * (a + b);
            const bool b1 = branch(j, z, R, mid), b2 = branch(jp, zp, R, mid);
            int cells = std::max(2, static_cast<int>(std::lround(spec.nodes_per_layer * (b - a) / d)));
            if (spec.rule == Rule::simpson && cells % 2) ++cells;
            const double h = (b - a) / cells;
            for (int c = 0; c <= cells; ++c) {
                const double u = c == cells ? b : a + c * h;
                double wt;
                if (spec.rule == Rule::trapezoid) wt = (c == 0 || c == cells) ? 0.5 : 1.0;
                else wt = (c == 0 || c == cells) ? 1.0 / 3.0 : (c % 2 ? 4.0 / 3.0 : 2.0 / 3.0);
                const Mat3 g1 = green_kernel_branch(m, st, j, R, z, u, b1);
                const Mat3 g2 = green_kernel_branch(m, st, jp, R, zp, u, b2);
                lhs += (w * wt * h) * (g1 * g2.adjoint());
            }
        }
    }

    // At z = z' the swapped kernel has to be the opposite one-sided limit.
    const bool above = j > jp || (j == jp && z >= zp);
    const Mat3 G = green_kernel_branch(m, st, j, jp, z, zp, above);
    const Mat3 Gs = green_kernel_branch(m, st, jp, j, zp, z, !above);
    const Vec3 ez(0.0, 0.0, 1.0);
    const cplx ej = eps[static_cast<std::size_t>(j)], ejp = eps[static_cast<std::size_t>(jp)];
    Mat3 rhs = (G - Gs.adjoint()) / (2.0 * I);
    rhs += (ejp.imag() / std::conj(ejp)) * (G * ez) * ez.transpose();
    rhs += (ej.imag() / ej) * ez * (Gs.conjugate() * ez).transpose();

    GreenIdentity out{lhs, rhs, 0.0};
    out.residual = (lhs - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
    return out;
}

}  // namespace slabio
