#pragma once

#include <string>
#include <variant>
#include <vector>

#include "slabio/core.hpp"

namespace slabio {

struct ConstantModel {
    cplx eps{1.0, 0.0};
};

struct Oscillator {
    double strength = 0;  // dimensionless s_m
    double omega0 = 0;    // rad/s
    double gamma = 0;     // rad/s
};

// eps(w) = eps_inf + sum s w0^2 / (w0^2 - w^2 - i gamma w)
struct DrudeLorentzModel {
    double eps_inf = 1.0;
    std::vector<Oscillator> oscillators;
};

// Linear in omega for both parts, no extrapolation.
struct TabulatedModel {
    std::vector<double> omega;
    std::vector<cplx> eps;
};

using PermittivityModel = std::variant<ConstantModel, DrudeLorentzModel, TabulatedModel>;

cplx evaluate(const PermittivityModel& m, double omega);

// Throws PassivityError / ConfigError; `where` names the offending material.
void validate(const PermittivityModel& m, const std::string& where);

struct Layer {
    double thickness = 0;  // m
    PermittivityModel material;
};

// "magnetic" swaps in the 2 eps_j beta_i / (...) p transmission. It breaks the
// commutator identities on purpose and exists only as a negative control.
enum class PConvention { field, magnetic };

struct Stack {
    PermittivityModel medium0;
    std::vector<Layer> layers;
    PermittivityModel mediumN;
    PConvention p_convention = PConvention::field;

    // Index of the last region; regions are 0..n.
    int n() const { return static_cast<int>(layers.size()) + 1; }
    double thickness(int j) const;
    const PermittivityModel& material(int j) const;
};

// Validates every invariant; all constructors of Stack in the library go through it.
Stack make_stack(PermittivityModel medium0, std::vector<Layer> layers, PermittivityModel mediumN,
                 PConvention conv = PConvention::field);

Stack load_stack(const std::string& text);
Stack load_stack_file(const std::string& path);
std::string serialize_stack(const Stack& s);

cplx epsilon(const Stack& s, int j, double omega);

inline PermittivityModel constant(cplx eps) { return ConstantModel{eps}; }

}  // namespace slabio
