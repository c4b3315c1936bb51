#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slabio {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3cd;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

// CODATA 2018, exact where the SI defines them.
struct Physical {
    double c = 299792458.0;
    double hbar = 1.054571817e-34;
    double kB = 1.380649e-23;
    double eps0 = 8.8541878128e-12;
    double mu0 = 1.25663706212e-6;
};

inline const Physical& si() {
    static const Physical p;
    return p;
}

constexpr double pi = 3.14159265358979323846;

enum class Pol { s, p };

inline const char* name(Pol q) { return q == Pol::s ? "s" : "p"; }

// Every library failure is one of these; the CLI maps them to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct PassivityError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct SingularInterfaceError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
// Raised by bosonize when a side has no input commutator weight.
struct RegimeError : Error {
    using Error::Error;
};
struct AccuracyError : Error {
    using Error::Error;
};
struct ConsistencyError : Error {
    using Error::Error;
};

}  // namespace slabio
