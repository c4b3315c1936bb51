#include <doctest.h>

#include <array>

#include "slabio/fresnel.hpp"
#include "support.hpp"

using namespace slabio;
using namespace slabio::testing;

namespace {

constexpr cplx I{0.0, 1.0};

// Independent oracle: forward/backward amplitude transfer matrices, with the
// interface coefficients written out from the admittances Y_s = beta,
// Y_p = beta / eps.
struct Oracle {
    cplx r, t;
};

Oracle transfer_oracle(const std::vector<cplx>& eps, const std::vector<double>& d, double k0, double k, Pol q) {
    const std::size_t N = eps.size();
    std::vector<cplx> b(N);
    for (std::size_t j = 0; j < N; ++j) {
        b[j] = std::sqrt(eps[j] * k0 * k0 - k * k);
        if (b[j].real() < 0 || (b[j].real() == 0 && b[j].imag() < 0)) b[j] = -b[j];
    }
    using M = std::array<cplx, 4>;
    auto mul = [](const M& a, const M& c) {
        return M{a[0] * c[0] + a[1] * c[2], a[0] * c[1] + a[1] * c[3], a[2] * c[0] + a[3] * c[2],
                 a[2] * c[1] + a[3] * c[3]};
    };
    M total{1.0, 0.0, 0.0, 1.0};
    for (std::size_t j = 0; j + 1 < N; ++j) {
        const cplx yi = q == Pol::s ? b[j] : b[j] / eps[j];
        const cplx yj = q == Pol::s ? b[j + 1] : b[j + 1] / eps[j + 1];
        const cplx r = (yi - yj) / (yi + yj);
        // For p this is the magnetic amplitude ratio; the field amplitude scales with it by sqrt(eps_i / eps_j).
        cplx t = 2.0 * yi / (yi + yj);
        if (q == Pol::p) t *= std::sqrt(eps[j]) / std::sqrt(eps[j + 1]);
        total = mul(total, M{1.0 / t, r / t, r / t, 1.0 / t});
        if (j + 2 < N) {
            const cplx ph = std::exp(I * b[j + 1] * d[j]);
            total = mul(total, M{1.0 / ph, 0.0, 0.0, ph});
        }
    }
    return {total[2] / total[0], 1.0 / total[0]};
}

Stack layered(const std::vector<cplx>& eps, const std::vector<double>& d) {
    std::vector<Layer> L;
    for (std::size_t j = 1; j + 1 < eps.size(); ++j) L.push_back({d[j - 1], constant(eps[j])});
    return make_stack(constant(eps.front()), L, constant(eps.back()));
}

}  // namespace

TEST_CASE("identical media do not reflect") {
    const Stack s = make_stack(constant(2.0), {}, constant(2.0));
    const double w = omega_of(kLambda);
    for (double ratio : {0.0, 0.5, 1.0 * std::sqrt(2.0), 3.0}) {
        const auto ctx = make_context(s, w, ratio * k0_of(w));
        for (Pol q : {Pol::s, Pol::p}) {
            const auto c = interface_rt(ctx, 0, 1, q);
            CHECK(c.r == cplx(0.0));
            CHECK(c.t == cplx(1.0));
        }
    }
}

TEST_CASE("vacuum to glass at normal incidence") {
    const Stack s = make_stack(constant(1.0), {}, constant(2.25));
    const auto ctx = make_context(s, omega_of(kLambda), 0.0);
    const auto cs = interface_rt(ctx, 0, 1, Pol::s);
    const auto cp = interface_rt(ctx, 0, 1, Pol::p);
    CHECK(std::abs(cs.r - cplx(-0.2)) < 1e-15);
    CHECK(std::abs(std::abs(cp.r) - 0.2) < 1e-15);
    CHECK(std::abs(cs.t - cplx(0.8)) < 1e-15);
    CHECK(std::abs(std::abs(cp.t) - 0.8) < 1e-15);
}

TEST_CASE("interface identities: t_ij / t_ji = beta_i / beta_j and t_ij t_ji = 1 - r_ij^2") {
    RandomStacks gen(11);
    for (int i = 0; i < 2000; ++i) {
        const Stack s = gen.next();
        const double w = omega_of(kLambda * (0.5 + gen.u()));
        const auto ctx = make_context(s, w, 3.0 * gen.u() * k0_of(w));
        for (int a = 0; a < ctx.n(); ++a) {
            for (Pol q : {Pol::s, Pol::p}) {
                if (ctx.eps[static_cast<std::size_t>(a)] == ctx.eps[static_cast<std::size_t>(a + 1)]) continue;
                const auto f = interface_rt(ctx, a, a + 1, q);
                const auto b = interface_rt(ctx, a + 1, a, q);
                const cplx ba = ctx.beta[static_cast<std::size_t>(a)], bb = ctx.beta[static_cast<std::size_t>(a + 1)];
                CHECK(std::abs(f.r + b.r) <= 1e-14 * std::max(1.0, std::abs(f.r)));
                CHECK(std::abs(f.t * bb - b.t * ba) <= 1e-13 * std::abs(f.t * bb));
                CHECK(std::abs(f.t * b.t - (1.0 - f.r * f.r)) <= 1e-13 * std::max(1.0, std::abs(f.r * f.r)));
            }
        }
    }
}

TEST_CASE("empty stack is transparent") {
    const Stack s = make_stack(constant(1.0), {}, constant(1.0));
    const auto ctx = make_context(s, omega_of(kLambda), 0.3 * k0_of(omega_of(kLambda)));
    for (Pol q : {Pol::s, Pol::p}) {
        const auto ss = scatter_set(ctx, s, q);
        CHECK(ss.r0n == cplx(0.0));
        CHECK(ss.rn0 == cplx(0.0));
        CHECK(ss.t0n == cplx(1.0));
        CHECK(ss.tn0 == cplx(1.0));
    }
}

TEST_CASE("quarter-wave and half-wave slabs") {
    const double w = omega_of(kLambda);
    const Stack qw = slab(4.0, 125e-9);
    const auto ctx = make_context(qw, w, 0.0);
    const auto s = scatter_set(ctx, qw, Pol::s);
    const auto p = scatter_set(ctx, qw, Pol::p);
    // Airy sum with r12 = -1/3, r23 = 1/3 and a round-trip phase of pi.
    CHECK(std::abs(s.r0n - cplx(-0.6)) < 1e-12);
    CHECK(std::abs(s.t0n - cplx(0.0, 0.8)) < 1e-12);
    CHECK(std::abs(std::abs(p.r0n) - 0.6) < 1e-12);
    CHECK(std::abs(std::norm(p.t0n) - 0.64) < 1e-12);
    CHECK(std::abs(s.D[1] - cplx(10.0 / 9.0)) < 1e-12);

    const Stack hw = slab(4.0, 250e-9);
    const auto ch = make_context(hw, w, 0.0);
    for (Pol q : {Pol::s, Pol::p}) {
        const auto h = scatter_set(ch, hw, q);
        CHECK(std::abs(h.r0n) < 1e-12);
        CHECK(std::abs(h.t0n - cplx(-1.0)) < 1e-12);
    }
}

TEST_CASE("multilayers agree with the transfer-matrix oracle") {
    RandomStacks gen(5);
    for (int i = 0; i < 3000; ++i) {
        const Stack s = gen.next();
        const double w = omega_of(kLambda * (0.5 + gen.u()));
        const double k = 2.5 * gen.u() * k0_of(w);
        const auto ctx = make_context(s, w, k);
        std::vector<double> d;
        for (int j = 1; j < s.n(); ++j) d.push_back(s.thickness(j));
        for (Pol q : {Pol::s, Pol::p}) {
            const auto ss = scatter_set(ctx, s, q);
            const auto o = transfer_oracle(ctx.eps, d, k0_of(w), k, q);
            // The transfer product loses accuracy through thick evanescent layers.
            if (std::abs(o.r) > 1e6 || !std::isfinite(std::abs(o.r))) continue;
            CHECK(std::abs(ss.r0n - o.r) < 1e-9 * std::max(1.0, std::abs(o.r)));
            CHECK(std::abs(ss.t0n - o.t) < 1e-9 * std::max(1.0, std::abs(o.t)));
        }
    }
}

TEST_CASE("thick absorbing layer stays finite") {
    // beta'' d = 300: the round-trip factor underflows harmlessly.
    const double w = omega_of(kLambda);
    const double k0 = k0_of(w);
    const cplx eps(1.0, 1.0);
    cplx b = std::sqrt(eps) * k0;
    const double d = 300.0 / b.imag();
    const Stack s = slab(eps, d);
    const auto ctx = make_context(s, w, 0.0);
    for (Pol q : {Pol::s, Pol::p}) {
        const auto ss = scatter_set(ctx, s, q);
        CHECK(std::isfinite(std::abs(ss.r0n)));
        CHECK(std::abs(ss.t0n) < 1e-120);
        const auto c = interface_rt(ctx, 0, 1, q);
        CHECK(std::abs(ss.r0n - c.r) < 1e-14);
        for (const auto& D : ss.D) CHECK(std::isfinite(std::abs(D)));
        CHECK(std::isfinite(std::abs(ss.xi(1, 0))));
    }
}

TEST_CASE("reciprocity beta_n t_0n = beta_0 t_n0") {
    RandomStacks gen(17);
    for (int i = 0; i < 2000; ++i) {
        const Stack s = gen.next();
        const double w = omega_of(kLambda * (0.5 + gen.u()));
        const auto ctx = make_context(s, w, 2.0 * gen.u() * k0_of(w));
        const cplx b0 = ctx.beta.front(), bn = ctx.beta.back();
        for (Pol q : {Pol::s, Pol::p}) {
            const auto ss = scatter_set(ctx, s, q);
            CHECK(std::abs(bn * ss.t0n - b0 * ss.tn0) <= 1e-12 * std::abs(bn * ss.t0n) + 1e-300);
        }
    }
}

TEST_CASE("lossless symmetric stacks conserve energy") {
    const double w = omega_of(kLambda);
    const Stack s = make_stack(constant(1.0), {{2e-7, constant(2.25)}, {1.3e-7, constant(5.0)}}, constant(1.0));
    for (int i = 0; i < 100; ++i) {
        const auto ctx = make_context(s, w, 0.999 * i / 100.0 * k0_of(w));
        for (Pol q : {Pol::s, Pol::p}) {
            const auto ss = scatter_set(ctx, s, q);
            CHECK(std::abs(std::norm(ss.r0n) + std::norm(ss.t0n) - 1.0) < 1e-13);
            CHECK(std::abs(std::norm(ss.rn0) + std::norm(ss.tn0) - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("generalized coefficients nest as star products of sub-stacks") {
    const double w = omega_of(kLambda);
    const Stack s = make_stack(constant({1.5, 0.1}), {{1e-7, constant({3.0, 0.2})}, {2e-7, constant(2.0)},
                                                      {0.7e-7, constant({4.0, 0.5})}},
                               constant(1.0));
    const auto ctx = make_context(s, w, 0.8 * k0_of(w));
    for (Pol q : {Pol::s, Pol::p}) {
        const auto ss = scatter_set(ctx, s, q);
        // Left part 0..2 and right part 2..4 joined through region 2.
        const Stack left = make_stack(constant({1.5, 0.1}), {{1e-7, constant({3.0, 0.2})}}, constant(2.0));
        const Stack right = make_stack(constant(2.0), {{0.7e-7, constant({4.0, 0.5})}}, constant(1.0));
        const auto sl = scatter_set(make_context(left, w, 0.8 * k0_of(w)), left, q);
        const auto sr = scatter_set(make_context(right, w, 0.8 * k0_of(w)), right, q);
        CHECK(rel(ss.r_j0[2], sl.rn0) < 1e-13);
        CHECK(rel(ss.r_jn[2], sr.r0n) < 1e-13);
        CHECK(rel(ss.t_0j[2], sl.t0n) < 1e-13);
        const Smat whole = star(star(Smat{sl.r0n, sl.t0n, sl.tn0, sl.rn0}, propagation(ctx.beta[2], 2e-7)),
                                Smat{sr.r0n, sr.t0n, sr.tn0, sr.rn0});
        CHECK(rel(ss.r0n, whole.rl) < 1e-13);
        CHECK(rel(ss.t0n, whole.tlr) < 1e-13);
        CHECK(rel(ss.rn0, whole.rr) < 1e-13);
        // Fabry-Perot denominator of region 2.
        const cplx ph = std::exp(I * ctx.beta[2] * 2e-7);
        CHECK(rel(ss.D[2], 1.0 - sl.rn0 * sr.r0n * ph * ph) < 1e-13);
        CHECK(ss.D[0] == cplx(1.0));
        CHECK(ss.D[4] == cplx(1.0));
    }
}

TEST_CASE("scalar coefficients do not depend on the in-plane direction") {
    const double w = omega_of(kLambda);
    const Stack s = slab({2.0, 0.5}, 2e-7);
    const auto a = make_context(s, w, 0.7 * k0_of(w));
    const auto b = make_context(s, w, 0.7 * k0_of(w), Eigen::Vector2d(std::cos(1.1), std::sin(1.1)));
    for (Pol q : {Pol::s, Pol::p}) {
        const auto sa = scatter_set(a, s, q), sb = scatter_set(b, s, q);
        CHECK(sa.r0n == sb.r0n);
        CHECK(sa.t0n == sb.t0n);
    }
}

TEST_CASE("a layer exactly on its light line is a removable singularity") {
    const double w = omega_of(kLambda);
    const Stack st = slab(2.25, 3e-7);
    const double k = 1.5 * k0_of(w);
    const auto ctx = make_context(st, w, k);
    REQUIRE(ctx.light_line_layers == std::vector<int>{1});
    for (Pol q : {Pol::s, Pol::p}) {
        const auto ss = scatter_set(ctx, st, q);
        CHECK(!ss.warnings.empty());
        const auto lo = scatter_set(make_context(st, w, k * (1.0 - 1e-6)), st, q);
        const auto hi = scatter_set(make_context(st, w, k * (1.0 + 1e-6)), st, q);
        // Smooth in k across the point: compare with the midpoint of the neighbours.
        CHECK(std::abs(ss.r0n - 0.5 * (lo.r0n + hi.r0n)) < 1e-8 * std::abs(ss.r0n));
        CHECK(std::abs(ss.t0n - 0.5 * (lo.t0n + hi.t0n)) < 1e-8 * std::abs(ss.t0n));
    }
}

TEST_CASE("interface errors") {
    const Stack s = slab(2.0, 1e-7);
    const auto ctx = make_context(s, omega_of(kLambda), 0.0);
    CHECK_THROWS_AS(interface_rt(ctx, 0, 2, Pol::s), DomainError);
    CHECK_THROWS_AS(interface_rt(ctx, -1, 0, Pol::s), DomainError);
}
