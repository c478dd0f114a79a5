// Complex literals of the form "a+bi" with optional parts.
#ifndef WDVV_COMPLEX_IO_HPP
#define WDVV_COMPLEX_IO_HPP

#include "wdvv/types.hpp"

#include <string>

namespace wdvv {

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i", exponents such as "1e-3-2.5e-1i".
cplx parse_complex(const std::string& s); // DomainError on malformed input

// Comma-separated list of complex literals.
CVec parse_complex_list(const std::string& s);

// Round-trippable "a+bi" rendering.
std::string format_complex(cplx z);

} // namespace wdvv

#endif
