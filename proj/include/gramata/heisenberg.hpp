#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace gramata {

/// Element b^x a^y c^z of the discrete Heisenberg group, in normal form.
/// With the generator matrices a = I + E12, b = I + E23 and c = I + E13 this
/// is the unitriangular matrix with (1,2) = y, (2,3) = x, (1,3) = z.
struct HeisenbergTriple
{
    std::int64_t x = 0;  // exponent of b
    std::int64_t y = 0;  // exponent of a
    std::int64_t z = 0;  // exponent of c

    static HeisenbergTriple a() { return {0, 1, 0}; }
    static HeisenbergTriple b() { return {1, 0, 0}; }
    static HeisenbergTriple c() { return {0, 0, 1}; }

    bool is_identity() const { return x == 0 && y == 0 && z == 0; }

    friend bool operator==(const HeisenbergTriple&, const HeisenbergTriple&) = default;

    std::string str() const
    {
        return "H(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) + ")";
    }
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Error("overflow", "heisenberg coordinate overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Error("overflow", "heisenberg coordinate overflow");
    return r;
}

} // namespace detail

/// (b^x a^y c^z)(b^x' a^y' c^z') = b^(x+x') a^(y+y') c^(z+z'+y*x')
inline HeisenbergTriple operator*(const HeisenbergTriple& g, const HeisenbergTriple& h)
{
    using detail::checked_add;
    return {checked_add(g.x, h.x), checked_add(g.y, h.y),
            checked_add(checked_add(g.z, h.z), detail::checked_mul(g.y, h.x))};
}

/// Solves g * g^-1 = e with the product law: (-x, -y, -z + x*y).
inline HeisenbergTriple inverse(const HeisenbergTriple& g)
{
    return {-g.x, -g.y, detail::checked_add(-g.z, detail::checked_mul(g.x, g.y))};
}

} // namespace gramata
