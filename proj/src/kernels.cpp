#include "slabio/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slabio/parallel.hpp"

namespace slabio {

namespace {
constexpr cplx I{0.0, 1.0};
}

const char* name(KernelKind k) {
    switch (k) {
        case KernelKind::R0n: return "R0n";
        case KernelKind::Rn0: return "Rn0";
        case KernelKind::T0n: return "T0n";
        case KernelKind::Tn0: return "Tn0";
        case KernelKind::Phi0Plus: return "Phi0+";
        case KernelKind::Phi0Minus: return "Phi0-";
        case KernelKind::PhinPlus: return "Phin+";
        default: return "Phin-";
    }
}

KernelKind parse_kernel_kind(const std::string& s) {
    for (auto k : {KernelKind::R0n, KernelKind::Rn0, KernelKind::T0n, KernelKind::Tn0, KernelKind::Phi0Plus,
                   KernelKind::Phi0Minus, KernelKind::PhinPlus, KernelKind::PhinMinus})
        if (s == name(k)) return k;
    throw DomainError("unknown kernel kind '" + s + "' (R0n, Rn0, T0n, Tn0, Phi0+, Phi0-, Phin+, Phin-)");
}

bool needs_layer(KernelKind k) {
    return k == KernelKind::Phi0Plus || k == KernelKind::Phi0Minus || k == KernelKind::PhinPlus ||
           k == KernelKind::PhinMinus;
}

double Window::operator()(double k) const {
    const double x = k / kw;
    return shape == Shape::gaussian ? std::exp(-0.5 * x * x) : std::exp(-x);
}

double Window::k_max() const {
    const double L = 16.0 * std::log(10.0);
    return shape == Shape::gaussian ? kw * std::sqrt(2.0 * L) : kw * L;
}

KCoefficients k_coefficients(const Stack& st, double omega, double k, KernelKind kind, int layer) {
    const int n = st.n();
    if (needs_layer(kind) && (layer < 1 || layer > n - 1))
        throw DomainError("kernel kind " + std::string(name(kind)) + " needs a layer index in 1..n-1");
    const ModeContext ctx = make_context(st, omega, k);
    KCoefficients out;
    for (Pol q : {Pol::s, Pol::p}) {
        const ScatterSet ss = scatter_set(ctx, st, q);
        cplx coef;
        Vec3 u, v;
        const auto outer0 = ctx.e(q, 0, -1);
        const auto outern = ctx.e(q, n, +1);
        switch (kind) {
            case KernelKind::R0n: coef = ss.r0n; u = outer0; v = ctx.e(q, 0, +1); break;
            case KernelKind::Rn0: coef = ss.rn0; u = outern; v = ctx.e(q, n, -1); break;
            case KernelKind::T0n: coef = ss.t0n; u = outern; v = ctx.e(q, 0, +1); break;
            case KernelKind::Tn0: coef = ss.tn0; u = outer0; v = ctx.e(q, n, -1); break;
            default: {
                const IOMatrix io = io_matrix(ss);
                const Mat2& f = io.phi[static_cast<std::size_t>(layer - 1)];
                const bool side0 = kind == KernelKind::Phi0Plus || kind == KernelKind::Phi0Minus;
                const bool plus = kind == KernelKind::Phi0Plus || kind == KernelKind::PhinPlus;
                coef = f(side0 ? 0 : 1, plus ? 0 : 1);
                u = side0 ? outer0 : outern;
                v = ctx.e(q, layer, plus ? +1 : -1);
            }
        }
        // khat = x: the in-plane component is x, e_s = -y.
        if (q == Pol::s) {
            out.s = coef * u.y() * v.y();
        } else {
            out.kk = coef * u.x() * v.x();
            out.kz = coef * u.x() * v.z();
            out.zk = coef * u.z() * v.x();
            out.zz = coef * u.z() * v.z();
        }
    }
    return out;
}

Mat3 k_tensor(const KCoefficients& c, const Eigen::Vector2d& khat) {
    const Vec3 kh(khat.x(), khat.y(), 0.0), ez(0.0, 0.0, 1.0);
    Mat3 I2 = Mat3::Zero();
    I2(0, 0) = I2(1, 1) = 1.0;
    return c.s * (I2 - kh * kh.transpose()) + c.kk * kh * kh.transpose() + c.kz * kh * ez.transpose() +
           c.zk * ez * kh.transpose() + c.zz * ez * ez.transpose();
}

Mat3 KernelField::tensor(std::size_t i, double phi) const {
    const auto& r = samples.at(i);
    const Vec3 rh(std::cos(phi), std::sin(phi), 0.0), rp(-std::sin(phi), std::cos(phi), 0.0), ez(0.0, 0.0, 1.0);
    Mat3 I2 = Mat3::Zero();
    I2(0, 0) = I2(1, 1) = 1.0;
    return r.I * I2 + r.Q * (rh * rh.transpose() - rp * rp.transpose()) + r.C * rh * ez.transpose() +
           r.D * ez * rh.transpose() + r.E * ez * ez.transpose();
}

KernelField kernel_radial(const Stack& st, double omega, KernelKind kind, int layer, const Window& w,
                          const std::vector<double>& rho, const KernelOptions& opt) {
    if (!(w.kw > 0) || !std::isfinite(w.kw)) throw DomainError("window scale must be positive");
    for (double r : rho)
        if (!(r >= 0) || !std::isfinite(r)) throw DomainError("rho grid must be non-negative");
    if (needs_layer(kind) && (layer < 1 || layer > st.n() - 1))
        throw DomainError("kernel kind " + std::string(name(kind)) + " needs a layer index in 1..n-1");

    const double kmax = w.k_max();
    auto weight = [&](double k, const KCoefficients& c) {
        return k * w(k) * std::max({std::abs(c.s), std::abs(c.kk), std::abs(c.kz), std::abs(c.zk), std::abs(c.zz)});
    };
    // The windowed integrand has to be negligible at the cut.
    {
        double peak = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double k = kmax * i / 400.0;
            peak = std::max(peak, weight(k, k_coefficients(st, omega, k, kind, layer)));
        }
        const double tail = weight(kmax, k_coefficients(st, omega, kmax, kind, layer));
        if (peak > 0 && tail > 1e-8 * peak) {
            std::ostringstream os;
            os << "window too wide: integrand at k_max = " << kmax << " 1/m is " << tail / peak
               << " of its peak; reduce k_w";
            throw AccuracyError(os.str());
        }
    }

    // Panel edges at the branch points Re k_j.
    std::vector<double> edges{0.0, kmax};
    std::vector<double> branch;
    const ModeContext c0 = make_context(st, omega, 0.0);
    for (const auto& kj : c0.kj)
        if (kj.real() > 0 && kj.real() < kmax) {
            edges.push_back(kj.real());
            branch.push_back(kj.real());
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    auto is_branch = [&](double k) { return std::find(branch.begin(), branch.end(), k) != branch.end(); };

    KernelField out;
    out.kind = kind;
    out.layer = layer;
    out.omega = omega;
    out.window = w;
    out.samples.resize(rho.size());

    parallel_for(
        rho.size(),
        [&](std::size_t i) {
            const double r = rho[i];
            std::map<double, KCoefficients> memo;
            auto coeff = [&](double k) -> const KCoefficients& {
                auto it = memo.find(k);
                if (it == memo.end()) it = memo.emplace(k, k_coefficients(st, omega, k, kind, layer)).first;
                return it->second;
            };
            // A 15-point rule can agree with itself by accident on a panel holding
            // many Bessel oscillations, so panels are cut to about two periods.
            const double span = r > 0 ? 4.0 * pi / r : kmax;
            auto integrate = [&](auto&& f) {
                cplx total = 0.0;
                for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
                    const double a = edges[e], b = edges[e + 1];
                    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / span)));
                    for (int p = 0; p < parts; ++p) {
                        const double lo = a + (b - a) * p / parts, hi = p + 1 == parts ? b : a + (b - a) * (p + 1) / parts;
                        // k = lo + (hi - lo)(3u^2 - 2u^3) flattens a square-root branch point at either end.
                        const bool smooth = (p == 0 && is_branch(a)) || (p + 1 == parts && is_branch(b));
                        auto g = [&](double u) -> cplx {
                            if (!smooth) return f(u);
                            const double k = lo + (hi - lo) * u * u * (3.0 - 2.0 * u);
                            return f(k) * (6.0 * (hi - lo) * u * (1.0 - u));
                        };
                        double err = 0.0, l1 = 0.0;
                        const double ua = smooth ? 0.0 : lo, ub = smooth ? 1.0 : hi;
                        const cplx v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                            g, ua, ub, opt.max_depth, opt.rel_tol, &err, &l1);
                        if (!std::isfinite(std::abs(v)) || err > 1e-7 * std::max(l1, 1e-300) + 1e-300) {
                            std::ostringstream os;
                            os << "k quadrature did not converge on [" << lo << ", " << hi << "] 1/m at rho = " << r
                               << " m (error " << err << ", L1 " << l1
                               << "); a pole on the real k axis (lossless guided mode) is the usual cause";
                            throw AccuracyError(os.str());
                        }
                        total += v;
                    }
                }
                return total / (2.0 * pi);
            };
            RadialSample s;
            s.rho = r;
            s.I = integrate([&](double k) {
                const auto& c = coeff(k);
                return cplx(k * w(k) * std::cyl_bessel_j(0.0, k * r)) * 0.5 * (c.s + c.kk);
            });
            s.Q = integrate([&](double k) {
                const auto& c = coeff(k);
                return cplx(k * w(k) * std::cyl_bessel_j(2.0, k * r)) * 0.5 * (c.s - c.kk);
            });
            s.C = integrate([&](double k) {
                const auto& c = coeff(k);
                return cplx(k * w(k) * std::cyl_bessel_j(1.0, k * r)) * I * c.kz;
            });
            s.D = integrate([&](double k) {
                const auto& c = coeff(k);
                return cplx(k * w(k) * std::cyl_bessel_j(1.0, k * r)) * I * c.zk;
            });
            s.E = integrate([&](double k) {
                const auto& c = coeff(k);
                return cplx(k * w(k) * std::cyl_bessel_j(0.0, k * r)) * c.zz;
            });
            out.samples[i] = s;
        },
        opt.workers > 0 ? opt.workers : worker_count());
    return out;
}

}  // namespace slabio
