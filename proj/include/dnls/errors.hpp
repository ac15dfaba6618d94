#ifndef DNLS_ERRORS_HPP
#define DNLS_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace dnls {

/// Invalid user-supplied configuration (lattice, parameters, config file).
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation requested too close to a pole of an elliptic function or of a
/// solution formula. Carries the offending location.
struct pole_error : std::domain_error {
    pole_error(const std::string& what, std::complex<double> where_)
        : std::domain_error(what), where(where_) {}
    std::complex<double> where;
};

/// Spectrum too close to resonance: a denominator lambda_j^* -+ lambda_i in
/// the dressing matrix is below threshold.
struct resonance_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// The dressing matrix is numerically singular at the requested point.
struct singular_matrix_error : std::runtime_error {
    singular_matrix_error(const std::string& what, double x_, double t_)
        : std::runtime_error(what), x(x_), t(t_) {}
    double x;
    double t;
};

/// An asymptotic-regime hypothesis (velocity ordering, Re(beta)>0) is violated.
struct hypothesis_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two spectral nodes coincide modulo the lattice.
struct degenerate_node_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Series did not meet its accuracy target within the iteration cap.
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical consistency condition failed internally (implementation or
/// parameter pathology, not user error).
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace dnls

#endif
