#ifndef TONGUE_CORE_ERRORS_HPP
#define TONGUE_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tongue {

// Bad arguments or violated preconditions.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed (lost bracket, lost tongue, failed closure, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class NoConvergenceError : public NumericalError {
public:
    explicit NoConvergenceError(const std::string& what) : NumericalError(what) {}
};

class SingularJacobianError : public NumericalError {
public:
    explicit SingularJacobianError(const std::string& what) : NumericalError(what) {}
};

}  // namespace tongue

#endif
