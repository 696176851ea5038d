#pragma once

#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace gramata {

/// Upper unitriangular 3x3 image of b^x a^y c^z: (1,2) = y, (2,3) = x, (1,3) = z.
inline ExactMatrix heis_to_matrix(const HeisenbergTriple& t)
{
    ExactMatrix m = ExactMatrix::identity(3);
    m(0, 1) = Rational(static_cast<long>(t.y));
    m(1, 2) = Rational(static_cast<long>(t.x));
    m(0, 2) = Rational(static_cast<long>(t.z));
    return m;
}

namespace sanov {

inline ExactMatrix generator_a() { return {{1, 2}, {0, 1}}; }
inline ExactMatrix generator_b() { return {{1, 0}, {2, 1}}; }

} // namespace sanov

/// Image of a word of F2 under a -> [[1,2],[0,1]], b -> [[1,0],[2,1]].
/// Unreduced input is accepted; the map is a homomorphism either way.
inline ExactMatrix sanov_embed(const std::vector<Letter>& letters)
{
    static const ExactMatrix gens[2][2] = {
        {sanov::generator_a(), inverse(sanov::generator_a())},
        {sanov::generator_b(), inverse(sanov::generator_b())},
    };
    ExactMatrix acc = ExactMatrix::identity(2);
    for (const auto& l : letters) {
        if (l.gen > 1)
            throw Error("element-group-mismatch", "sanov embedding is defined on rank-2 words only");
        acc = acc * gens[l.gen][l.sign < 0 ? 1 : 0];
    }
    return acc;
}

inline ExactMatrix sanov_embed(const ReducedWord& w) { return sanov_embed(w.letters()); }

/// s -> diag(s, 1/s), the embedding of Q+ into SL(2,Q).
inline ExactMatrix qplus_embed(const Rational& s)
{
    if (s.sign() <= 0)
        throw Error("not-positive", "qplus_embed needs a positive rational, got " + s.str());
    ExactMatrix m(2);
    m(0, 0) = s;
    m(1, 1) = s.reciprocal();
    return m;
}

/// Block-diagonal [m1 0; 0 m2]. Both blocks must be 2x2.
inline ExactMatrix pair_embed(const ExactMatrix& m1, const ExactMatrix& m2)
{
    if (m1.dim() != 2 || m2.dim() != 2)
        throw Error("dimension-mismatch", "pair_embed takes two 2x2 matrices");
    ExactMatrix out(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            out(i, j) = m1(i, j);
            out(i + 2, j + 2) = m2(i, j);
        }
    return out;
}

/// F2 x F2 -> SL(4,Z) through the Sanov embedding on each factor.
inline ExactMatrix pair_embed(const ReducedWord& w1, const ReducedWord& w2)
{
    return pair_embed(sanov_embed(w1), sanov_embed(w2));
}

namespace bs12 {

/// Generators of the matrix image of BS(1,2) = <a,b | b a b^-1 = a^2>.
inline ExactMatrix generator_a() { return {{1, 0}, {-1, 1}}; }
inline ExactMatrix generator_b() { return {{Rational::normalize(1, 2), 0}, {0, 1}}; }

enum class Symbol { A, AInv, B, BInv };

} // namespace bs12

inline ExactMatrix bs_word_to_matrix(const std::vector<bs12::Symbol>& word)
{
    using bs12::Symbol;
    ExactMatrix acc = ExactMatrix::identity(2);
    for (Symbol s : word) {
        switch (s) {
        case Symbol::A: acc = acc * bs12::generator_a(); break;
        case Symbol::AInv: acc = acc * inverse(bs12::generator_a()); break;
        case Symbol::B: acc = acc * bs12::generator_b(); break;
        case Symbol::BInv: acc = acc * inverse(bs12::generator_b()); break;
        }
    }
    return acc;
}

/// Parses `a`, `a^-1`, `b`, `b^-1` tokens separated by spaces (or `a`, `A`,
/// `b`, `B` characters with no spaces).
inline std::vector<bs12::Symbol> parse_bs_word(std::string_view text)
{
    using bs12::Symbol;
    std::vector<Symbol> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ' ') {
            ++i;
            continue;
        }
        bool inv = false;
        if (text.substr(i + 1, 3) == "^-1") {
            inv = true;
        }
        switch (ch) {
        case 'a': out.push_back(inv ? Symbol::AInv : Symbol::A); break;
        case 'b': out.push_back(inv ? Symbol::BInv : Symbol::B); break;
        case 'A': out.push_back(Symbol::AInv); break;
        case 'B': out.push_back(Symbol::BInv); break;
        default: throw Error("syntax", "unexpected '" + std::string(1, ch) + "' in BS(1,2) word");
        }
        i += inv ? 4 : 1;
    }
    return out;
}

/// B^m C^n in the Heisenberg group, where B = b and C = c generate a copy of Z^2.
inline HeisenbergTriple z2_to_heisenberg(const IntVector& v)
{
    if (v.coords.size() != 2)
        throw Error("element-group-mismatch", "z2_to_heisenberg needs a length-2 vector");
    for (const auto& c : v.coords)
        if (!c.fits_slong_p())
            throw Error("overflow", "coordinate does not fit a heisenberg triple");
    return {v.coords[0].get_si(), 0, v.coords[1].get_si()};
}

} // namespace gramata
