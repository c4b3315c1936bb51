#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slabio/core.hpp"

namespace slabio {

struct UsageError : Error {
    using Error::Error;
};

// Exit codes: 0 success, 1 verification failure or numerical error,
// 2 usage or configuration error. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a,b,c" or "lin:start:stop:count".
std::vector<double> parse_grid(const std::string& spec);

// Angular frequency from a value in rad/s, eV, or um (vacuum wavelength).
double omega_from(double v, const std::string& unit);
// Transverse wavenumber from 1/m, 1/um, ratio (multiples of omega/c), or deg
// (vacuum angle of incidence).
double k_from(double v, const std::string& unit, double omega);

}  // namespace slabio
