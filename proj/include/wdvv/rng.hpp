// Seeded uniform draws keyed by (campaign seed, stream, sample index).
#ifndef WDVV_RNG_HPP
#define WDVV_RNG_HPP

#include "wdvv/types.hpp"

#include <cstdint>
#include <random>

namespace wdvv {

class SeededRng {
public:
    SeededRng(std::uint64_t seed, std::uint64_t stream, int index)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                          static_cast<std::uint32_t>(index)};
        gen_.seed(seq);
    }

    double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

    cplx box(double re_lo, double re_hi, double im_lo, double im_hi)
    {
        const double re = uni(re_lo, re_hi);
        return {re, uni(im_lo, im_hi)};
    }

    cplx polar(double r_lo, double r_hi, double a_lo, double a_hi)
    {
        const double r = uni(r_lo, r_hi);
        return std::polar(r, uni(a_lo, a_hi));
    }

private:
    std::mt19937_64 gen_;
};

} // namespace wdvv

#endif
