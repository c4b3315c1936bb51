#pragma once

#include <string>
#include <vector>

#include "slabio/io_relations.hpp"

namespace slabio {

enum class KernelKind { R0n, Rn0, T0n, Tn0, Phi0Plus, Phi0Minus, PhinPlus, PhinMinus };

const char* name(KernelKind k);
KernelKind parse_kernel_kind(const std::string& s);
bool needs_layer(KernelKind k);

struct Window {
    enum class Shape { gaussian, exponential };
    Shape shape = Shape::gaussian;
    double kw = 0;  // 1/m

    double operator()(double k) const;
    // Where the window has fallen to 1e-16.
    double k_max() const;
};

// Scalar content of the k-space dyad at in-plane direction khat:
//   s (I2 - khat khat) + kk khat khat + kz khat e_z + zk e_z khat + zz e_z e_z
// The s term is the s polarization, the rest is p.
struct KCoefficients {
    cplx s{0.0}, kk{0.0}, kz{0.0}, zk{0.0}, zz{0.0};
};

KCoefficients k_coefficients(const Stack& st, double omega, double k, KernelKind kind, int layer = 0);
Mat3 k_tensor(const KCoefficients& c, const Eigen::Vector2d& khat);

// Radial functions of the windowed kernel:
//   K(rho) = I (I2) + Q (rhohat rhohat - rhoperp rhoperp) + C rhohat e_z + D e_z rhohat + E e_z e_z
// with I, Q, E from Hankel transforms of order 0, 2, 0 and C, D of order 1.
struct RadialSample {
    double rho = 0;
    cplx I{0.0}, Q{0.0}, C{0.0}, D{0.0}, E{0.0};
};

struct KernelField {
    KernelKind kind = KernelKind::R0n;
    int layer = 0;
    double omega = 0;
    Window window;
    std::vector<RadialSample> samples;

    // Tensor at separation rho * (cos phi, sin phi).
    Mat3 tensor(std::size_t i, double phi) const;
};

struct KernelOptions {
    double rel_tol = 1e-10;
    unsigned max_depth = 18;
    int workers = 0;  // 0: worker_count()
};

KernelField kernel_radial(const Stack& st, double omega, KernelKind kind, int layer, const Window& w,
                          const std::vector<double>& rho, const KernelOptions& opt = {});

}  // namespace slabio
