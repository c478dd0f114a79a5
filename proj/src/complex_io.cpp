#include "wdvv/complex_io.hpp"

#include <fmt/format.h>

#include <cctype>

namespace wdvv {

namespace {

double parse_real(const std::string& s, const std::string& whole)
{
    if (s.empty())
        throw DomainError("malformed complex literal: '" + whole + "'");
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw DomainError("malformed complex literal: '" + whole + "'");
    }
    if (pos != s.size())
        throw DomainError("malformed complex literal: '" + whole + "'");
    return v;
}

} // namespace

cplx parse_complex(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.empty())
        throw DomainError("empty complex literal");
    if (s.back() != 'i' && s.back() != 'j')
        return {parse_real(s, raw), 0.0};
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string re = split == std::string::npos ? "" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+")
        im = "1";
    else if (im == "-")
        im = "-1";
    const double r = re.empty() ? 0.0 : parse_real(re, raw);
    return {r, parse_real(im, raw)};
}

CVec parse_complex_list(const std::string& s)
{
    CVec out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = s.find(',', start);
        out.push_back(parse_complex(s.substr(start, comma - start)));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::string format_complex(cplx z)
{
    const double im = z.imag();
    return fmt::format("{}{}{}i", z.real(), std::signbit(im) ? "-" : "+", std::abs(im));
}

} // namespace wdvv
