// Common scalar types and the error hierarchy shared by all modules.
#ifndef WDVV_TYPES_HPP
#define WDVV_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdvv {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NonConvergent : Error {
    using Error::Error;
};

struct PoleError : Error {
    using Error::Error;
};

struct StencilError : Error {
    using Error::Error;
};

struct UnstableError : Error {
    using Error::Error;
};

struct DegenerateCovering : Error {
    using Error::Error;
};

struct SingularJacobian : Error {
    using Error::Error;
};

struct InversionError : Error {
    using Error::Error;
};

// Principal logarithm with log(-1) = +i*pi; throws on a zero argument.
inline cplx log_checked(cplx z, const char* what)
{
    if (z == cplx{0.0, 0.0})
        throw DomainError(std::string("log of zero in ") + what);
    if (z.imag() == 0.0)
        z = {z.real(), 0.0}; // a negative zero imaginary part would select -i*pi
    return std::log(z);
}

} // namespace wdvv

#endif
