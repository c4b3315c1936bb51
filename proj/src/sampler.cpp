#include "slabio/sampler.hpp"

#include <cmath>
#include <random>

#include "slabio/commutators.hpp"
#include "slabio/parallel.hpp"
#include "slabio/thermal.hpp"

namespace slabio {

namespace {

constexpr cplx I{0.0, 1.0};

struct LayerPlan {
    int j = 0;
    int cells = 0;
    double dz = 0;
    cplx scale{0.0};   // field per unit current, N0-normalized
    double sigma = 0;  // per-component standard deviation of one cell's current
    std::vector<Vec3> up, um;  // e_{+-} weighted by the cell phase and dz
    Eigen::RowVector2cd phi;
};

}  // namespace

SampleEstimate sample_emission(const SamplePlan& plan, const Stack& st, Side side) {
    if (plan.realizations < 1) throw DomainError("sampler needs at least one realization");
    const int n = st.n();
    const std::size_t nl = static_cast<std::size_t>(n - 1);
    if (plan.nodes.size() != 1 && plan.nodes.size() != nl)
        throw DomainError("sampler: give one node count or one per layer");

    const ModeContext ctx = make_context(st, plan.omega, plan.k);
    const CommutatorSet cs = commutator_set(ctx, st, plan.q);
    const auto& ph = si();
    const double nb = bose(plan.omega, plan.T);
    const double norm = std::sqrt(N0(plan.omega));
    const int row = side == Side::zero ? 0 : 1;

    SampleEstimate est;
    std::vector<LayerPlan> layers;
    for (int j = 1; j < n; ++j) {
        const auto u = static_cast<std::size_t>(j);
        const int cells = plan.nodes.size() == 1 ? plan.nodes[0] : plan.nodes[u - 1];
        if (cells < 2) throw DomainError("sampler: at least two cells per layer");
        const double epp = ctx.eps[u].imag();
        if (epp == 0.0) {
            est.warnings.push_back("layer " + std::to_string(j) + " is lossless and carries no noise");
            continue;
        }
        LayerPlan L;
        L.j = j;
        L.cells = cells;
        const double d = st.thickness(j);
        L.dz = d / cells;
        if (!(L.dz > 0) || !std::isfinite(L.dz)) throw DomainError("sampler: degenerate cell size");
        const cplx b = ctx.beta[u];
        // Current amplitude omega sqrt(hbar eps0 eps''/pi) times the Green factor -mu0 omega / 2 beta.
        L.scale = plan.omega * std::sqrt(ph.hbar * ph.eps0 * epp / pi) * (-ph.mu0 * plan.omega / (2.0 * b)) / norm;
        // Delta-correlated noise of weight n (2 pi)^2 per unit length, split over the cell.
        L.sigma = std::sqrt(nb * 4.0 * pi * pi / L.dz / 2.0);
        const Vec3& ep = ctx.e(plan.q, j, +1);
        const Vec3& em = ctx.e(plan.q, j, -1);
        for (int c = 0; c < cells; ++c) {
            const double z = (c + 0.5) * L.dz;
            // The + amplitude is referenced to the far face, matching phi_far.
            L.up.push_back(ep * (std::exp(-I * b * (z - d)) * L.dz));
            L.um.push_back(em * (std::exp(I * b * z) * L.dz));
        }
        L.phi = cs.layers[u - 1].phi_far.row(row);
        layers.push_back(std::move(L));
    }

    std::vector<double> value(plan.realizations, 0.0);
    parallel_for(
        plan.realizations,
        [&](std::size_t r) {
            // One keyed stream per realization: the draw order inside it is fixed,
            // so the result does not depend on which worker ran it.
            std::seed_seq seq{static_cast<std::uint32_t>(plan.seed), static_cast<std::uint32_t>(plan.seed >> 32),
                              static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(std::uint64_t(r) >> 32)};
            std::mt19937_64 gen(seq);
            std::normal_distribution<double> normal;
            cplx out = 0.0;
            for (const auto& L : layers) {
                cplx ap = 0.0, am = 0.0;
                for (int c = 0; c < L.cells; ++c) {
                    Vec3 f;
                    for (int m = 0; m < 3; ++m) {
                        const double re = normal(gen), im = normal(gen);
                        f[m] = L.sigma * cplx(re, im);
                    }
                    ap += dotu(L.up[static_cast<std::size_t>(c)], f);
                    am += dotu(L.um[static_cast<std::size_t>(c)], f);
                }
                out += L.scale * (L.phi(0) * ap + L.phi(1) * am);
            }
            value[r] = std::norm(out);
        },
        plan.workers > 0 ? plan.workers : worker_count());

    const std::size_t N = value.size();
    const double mean = pairwise_sum(value.data(), N) / static_cast<double>(N);
    std::vector<double> dev(N);
    for (std::size_t i = 0; i < N; ++i) dev[i] = (value[i] - mean) * (value[i] - mean);
    const double var = N > 1 ? pairwise_sum(dev.data(), N) / static_cast<double>(N - 1) : 0.0;
    est.w = mean;
    est.se = std::sqrt(var / static_cast<double>(N));
    return est;
}

}  // namespace slabio
