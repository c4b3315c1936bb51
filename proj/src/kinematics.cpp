#include "slabio/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slabio {

cplx propagation_constant(cplx arg) {
    // A negative real argument belongs to a lossless evanescent wave; pick +i sqrt|.|
    // explicitly rather than trust the sign of a zero imaginary part.
    if (arg.imag() == 0.0 && arg.real() < 0.0) return {0.0, std::sqrt(-arg.real())};
    if (arg.imag() == 0.0) return {std::sqrt(arg.real()), 0.0};
    cplx b = std::sqrt(arg);
    if (b.real() < 0) b = -b;
    return b;
}

ModeContext make_context(const Stack& s, double omega, double k, const Eigen::Vector2d& khat) {
    if (!(omega > 0) || !std::isfinite(omega)) throw DomainError("omega must be positive and finite");
    if (!(k >= 0) || !std::isfinite(k)) throw DomainError("k must be non-negative and finite");
    if (std::abs(khat.norm() - 1.0) > 1e-12) throw DomainError("khat must be a unit vector");

    ModeContext c;
    c.omega = omega;
    c.k = k;
    c.khat = khat;
    const double k0 = omega / si().c;
    const int n = s.n();
    const Vec3 kh(khat.x(), khat.y(), 0.0);
    const Vec3 ez(0.0, 0.0, 1.0);
    const Vec3 es = kh.cross(ez);
    for (int j = 0; j <= n; ++j) {
        const cplx eps = epsilon(s, j, omega);
        c.eps.push_back(eps);
        cplx root = std::sqrt(eps);
        if (eps.imag() == 0.0 && eps.real() < 0.0) root = {0.0, std::sqrt(-eps.real())};
        const cplx kj = root * k0;
        if (kj == cplx(0.0)) throw DomainError("eps = 0 in region " + std::to_string(j) + ": p basis undefined");
        // eps k0^2 - k^2 keeps Im >= 0 exactly; squaring kj would not.
        cplx b = propagation_constant(eps * (k0 * k0) - k * k);
        if (b == cplx(0.0) && j > 0 && j < n) {
            b = 1e-5 * std::min(k0, 1.0 / s.thickness(j));
            c.light_line_layers.push_back(j);
        }
        c.kj.push_back(kj);
        c.beta.push_back(b);
        c.es.push_back(es);
        c.ep_plus.push_back((-b * kh + k * ez) / kj);
        c.ep_minus.push_back((b * kh + k * ez) / kj);
    }
    return c;
}

const Vec3& ModeContext::e(Pol q, int j, int sign) const {
    if (q == Pol::s) return es[static_cast<std::size_t>(j)];
    return sign > 0 ? ep_plus[static_cast<std::size_t>(j)] : ep_minus[static_cast<std::size_t>(j)];
}

Vec3 ModeContext::e_reversed(Pol q, int j, int sign) const {
    // e_s(-k) = -e_s(k), e_{p+-}(-k) = e_{p-+}(k)
    if (q == Pol::s) return -es[static_cast<std::size_t>(j)];
    return sign > 0 ? ep_minus[static_cast<std::size_t>(j)] : ep_plus[static_cast<std::size_t>(j)];
}

Regime regime(const ModeContext& ctx, int j) {
    const cplx b = ctx.beta.at(static_cast<std::size_t>(j));
    if (b.imag() == 0.0 && b.real() > 0.0) return Regime::propagating;
    if (b.real() == 0.0 && b.imag() > 0.0) return Regime::evanescent;
    return Regime::lossy;
}

const char* name(Regime r) {
    switch (r) {
        case Regime::propagating: return "propagating";
        case Regime::evanescent: return "evanescent";
        default: return "lossy";
    }
}

}  // namespace slabio
