#include <doctest.h>

#include "slabio/green.hpp"
#include "support.hpp"

using namespace slabio;
using namespace slabio::testing;

namespace {

constexpr cplx I{0.0, 1.0};

double maxabs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

// Homogeneous-space planar kernel: (i / 2 beta) (1 - K K^T / k^2) e^{i beta |z - z'|}
// with K = k khat + sgn(z - z') beta e_z.
Mat3 homogeneous(cplx eps, double omega, double k, const Eigen::Vector2d& khat, double dz) {
    const double k0 = omega / si().c;
    cplx b = std::sqrt(eps * k0 * k0 - k * k);
    if (b.real() < 0) b = -b;
    const Vec3 K(k * khat.x(), k * khat.y(), (dz >= 0 ? 1.0 : -1.0) * b);
    return (I / (2.0 * b)) * (Mat3::Identity() - K * K.transpose() / (eps * k0 * k0)) *
           std::exp(I * b * std::abs(dz));
}

}  // namespace

TEST_CASE("uniform medium reproduces the homogeneous kernel") {
    const cplx eps(2.0, 0.3);
    const Stack st = make_stack(constant(eps), {}, constant(eps));
    const double w = omega_of(kLambda);
    const Eigen::Vector2d kh(std::cos(0.4), std::sin(0.4));
    for (double ratio : {0.0, 0.6, 1.7, 3.0}) {
        const double k = ratio * k0_of(w);
        const auto m = solve_mode(st, w, k, kh);
        const struct {
            int j, jp;
            double z, zp;
        } pts[] = {{0, 0, -1e-7, -3e-7}, {0, 0, -4e-7, -1e-7}, {1, 0, 2e-7, -1e-7}, {0, 1, -2e-7, 5e-8},
                   {1, 1, 3e-7, 3e-7}};
        for (const auto& p : pts) {
            const Mat3 g = green_kernel(m, st, p.j, p.jp, p.z, p.zp);
            const Mat3 o = homogeneous(eps, w, k, kh, p.z - p.zp);
            CHECK(maxabs(g - o) < 1e-13 * maxabs(o));
        }
    }
}

TEST_CASE("unit-strength waves") {
    const double w = omega_of(kLambda);
    const Stack vac = make_stack(constant(1.0), {}, constant(1.0));
    const auto mv = solve_mode(vac, w, 0.4 * k0_of(w));
    for (Pol q : {Pol::s, Pol::p}) {
        const Vec3 v = wavefun(mv, vac, q, 1, Dir::above, 3e-7);
        const Vec3 o = mv.ctx.e(q, 1, +1) * std::exp(I * mv.ctx.beta[1] * 3e-7);
        CHECK((v - o).norm() < 1e-15);
    }

    const Stack sl = slab({2.0, 0.5}, 2e-7);
    const auto ms = solve_mode(sl, w, 0.4 * k0_of(w));
    for (Pol q : {Pol::s, Pol::p}) {
        const Vec3 v = wavefun(ms, sl, q, 1, Dir::above, 2e-7);
        const Vec3 o = ms.ctx.e(q, 1, +1) + ms[q].r_jn[1] * ms.ctx.e(q, 1, -1);
        CHECK((v - o).norm() < 1e-15);
    }

    // Quarter-wave slab at normal incidence: beta d = pi / 2, so
    // E^{1>}(0) = -i e_+ + i r_{1/n} e_- with r_{1/n} = +1/3 (s) and -1/3 (p).
    const Stack qw = slab(4.0, 125e-9);
    const auto mq = solve_mode(qw, w, 0.0);
    for (Pol q : {Pol::s, Pol::p}) {
        const double r = q == Pol::s ? 1.0 / 3.0 : -1.0 / 3.0;
        CHECK(std::abs(mq[q].r_jn[1] - r) < 1e-14);
        const Vec3 v = wavefun(mq, qw, q, 1, Dir::above, 0.0);
        const Vec3 o = -I * mq.ctx.e(q, 1, +1) + I * r * mq.ctx.e(q, 1, -1);
        CHECK((v - o).norm() < 1e-12);
    }
}

TEST_CASE("reciprocity under transpose and k reversal") {
    RandomStacks gen(23);
    for (int i = 0; i < 300; ++i) {
        const Stack st = gen.next();
        const double w = omega_of(kLambda * (0.5 + gen.u()));
        const double k = 2.5 * gen.u() * k0_of(w);
        const double phi = 2.0 * pi * gen.u();
        const Eigen::Vector2d kh(std::cos(phi), std::sin(phi));
        const auto m = solve_mode(st, w, k, kh);
        const auto mr = solve_mode(st, w, k, -kh);
        auto pick = [&](int& j, double& z) {
            j = static_cast<int>(gen.u() * (st.n() + 1)) % (st.n() + 1);
            if (j == 0) z = -3e-7 * gen.u();
            else if (j == st.n()) z = 3e-7 * gen.u();
            else z = st.thickness(j) * gen.u();
        };
        for (int t = 0; t < 5; ++t) {
            int j, jp;
            double z, zp;
            pick(j, z);
            pick(jp, zp);
            const Mat3 a = green_kernel(m, st, j, jp, z, zp);
            const Mat3 b = green_kernel(mr, st, jp, j, zp, z);
            // At coincidence the transposed pair sits on the other branch.
            if (j == jp && z == zp) continue;
            CHECK(maxabs(a - b.transpose()) <= 1e-12 * maxabs(a) + 1e-300);
        }
    }
}

TEST_CASE("the diagonal block jumps by -i k (khat e_z + e_z khat) / k_j^2") {
    const double w = omega_of(kLambda);
    const Stack st = slab(4.0, 125e-9);
    const Eigen::Vector2d kh(std::cos(0.8), std::sin(0.8));
    for (double ratio : {0.3, 1.4}) {
        const double k = ratio * k0_of(w);
        const auto m = solve_mode(st, w, k, kh);
        for (int j : {0, 1, 2}) {
            const double z = j == 0 ? -5e-8 : (j == 1 ? 6e-8 : 4e-8);
            const Mat3 jump =
                green_kernel_branch(m, st, j, j, z, z, true) - green_kernel_branch(m, st, j, j, z, z, false);
            const Vec3 khat(kh.x(), kh.y(), 0.0), ez(0.0, 0.0, 1.0);
            const cplx kj2 = m.ctx.kj[static_cast<std::size_t>(j)] * m.ctx.kj[static_cast<std::size_t>(j)];
            const Mat3 o = (-I * k / kj2) * (khat * ez.transpose() + ez * khat.transpose());
            CHECK(maxabs(jump - o) < 1e-12 * maxabs(o));
            // One-sided limits approached from a small offset.
            const Mat3 up = green_kernel(m, st, j, j, z + 1e-15, z);
            const Mat3 dn = green_kernel(m, st, j, j, z - 1e-15, z);
            CHECK(maxabs((up - dn) - o) < 1e-6 * maxabs(o));
        }
    }
}

TEST_CASE("outgoing waves only in lossless vacuum half-spaces") {
    const double w = omega_of(kLambda);
    const Stack st = make_stack(constant(1.0), {{1e-7, constant({2.0, 0.5})}, {2e-7, constant(3.0)}},
                                constant(1.0));
    for (double ratio : {0.2, 0.9}) {
        const auto m = solve_mode(st, w, ratio * k0_of(w));
        const cplx b = m.ctx.beta[0];
        for (int jp : {1, 2}) {
            const double zp = 0.5 * st.thickness(jp);
            const Mat3 n1 = green_kernel(m, st, 3, jp, 1e-7, zp), n2 = green_kernel(m, st, 3, jp, 7.3e-6, zp);
            CHECK(maxabs(n2 - n1 * std::exp(I * b * (7.3e-6 - 1e-7))) < 1e-12 * maxabs(n1));
            const Mat3 z1 = green_kernel(m, st, 0, jp, -1e-7, zp), z2 = green_kernel(m, st, 0, jp, -5.1e-6, zp);
            CHECK(maxabs(z2 - z1 * std::exp(I * b * (5.1e-6 - 1e-7))) < 1e-12 * maxabs(z1));
        }
    }
}

TEST_CASE("integral identity on the absorbing cladding example") {
    const double w = omega_of(kLambda);
    const Stack st = slab({2.0, 0.2}, 2e-7, {1.0, 0.01}, {1.0, 0.01});
    for (double ratio : {0.0, 0.5, 1.5}) {
        const auto m = solve_mode(st, w, ratio * k0_of(w));
        const auto gi = verify_green_identity(m, st, 0, 0, 0.0, 0.0, {200, Rule::simpson});
        CHECK(gi.residual < 1e-6);
        for (auto [j, jp, z, zp] : {std::tuple{1, 1, 5e-8, 1.5e-7}, std::tuple{2, 0, 1e-7, -2e-7},
                                    std::tuple{1, 2, 2e-7, 0.0}}) {
            CHECK(verify_green_identity(m, st, j, jp, z, zp, {200, Rule::simpson}).residual < 1e-6);
        }
    }
}

TEST_CASE("integral identity in a uniform absorbing medium") {
    const double w = omega_of(kLambda);
    const Stack st = make_stack(constant({1.0, 0.01}), {}, constant({1.0, 0.01}));
    for (double ratio : {0.0, 0.7, 2.0}) {
        const auto m = solve_mode(st, w, ratio * k0_of(w));
        CHECK(verify_green_identity(m, st, 0, 0, 0.0, 0.0).residual < 1e-8);
        CHECK(verify_green_identity(m, st, 1, 0, 3e-7, -1e-7).residual < 1e-8);
    }
}

TEST_CASE("quadrature converges at the order of the rule") {
    const double w = omega_of(kLambda);
    const Stack st = slab({2.0, 0.2}, 2e-7, {1.0, 0.01}, {1.0, 0.01});
    const auto m = solve_mode(st, w, 0.5 * k0_of(w));
    for (auto [rule, expect] : {std::pair{Rule::trapezoid, 2.0}, std::pair{Rule::simpson, 4.0}}) {
        double prev = 0.0;
        for (int nodes : {20, 40, 80}) {
            const double r = verify_green_identity(m, st, 0, 0, 0.0, 0.0, {nodes, rule}).residual;
            if (prev > 0) {
                const double order = std::log2(prev / r);
                CHECK(order > expect - 0.2);
            }
            prev = r;
        }
    }
}

TEST_CASE("identity preconditions and region checks") {
    const double w = omega_of(kLambda);
    const Stack lossless_outer = slab({2.0, 0.2}, 2e-7);
    const auto m = solve_mode(lossless_outer, w, 0.3 * k0_of(w));
    CHECK_THROWS_AS(verify_green_identity(m, lossless_outer, 0, 0, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(green_kernel(m, lossless_outer, 0, 1, 1e-9, 0.0), DomainError);
    CHECK_THROWS_AS(green_kernel(m, lossless_outer, 1, 1, 3e-7, 0.0), DomainError);
    CHECK_THROWS_AS(green_kernel(m, lossless_outer, 2, 1, -1e-9, 0.0), DomainError);
    CHECK_THROWS_AS(green_kernel(m, lossless_outer, 3, 1, 0.0, 0.0), DomainError);
}
