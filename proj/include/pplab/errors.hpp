#pragma once

#include <stdexcept>
#include <string>

namespace pplab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// budget or memory cap exceeded; the CLI maps this to exit 75
struct ResourceError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct PrecisionError : Error { using Error::Error; };

struct QuadratureError : Error {
    double achieved;
    QuadratureError(const std::string& what, double achieved_err)
        : Error(what), achieved(achieved_err) {}
};

struct IntegrandError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct NumericIntegrityError : Error { using Error::Error; };

}  // namespace pplab
