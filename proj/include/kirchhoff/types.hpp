#ifndef KIRCHHOFF_TYPES_HPP
#define KIRCHHOFF_TYPES_HPP

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kirchhoff {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// A point of the physical domain; y is 0 on 1D meshes.
template <typename Scalar>
using Point = Eigen::Matrix<Scalar, 2, 1>;

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct mesh_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct degenerate_direction_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct solver_failure_error : std::runtime_error {
    solver_failure_error(const std::string& what, double residual)
        : std::runtime_error(what), final_residual(residual) {}
    double final_residual;
};

struct fibering_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic uniform draw in [0,1): 53 mantissa bits from one 64-bit word.
/// Used instead of std::uniform_real_distribution, whose output is
/// implementation-defined, so seeded runs reproduce across standard libraries.
template <typename Rng>
double unit_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace kirchhoff

#endif
