#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "efa.hpp"
#include "error.hpp"
#include "group.hpp"

namespace gramata {

/// A named generator; words over it use the symbols `name` and `name^-1`.
struct NamedGenerator
{
    std::string name;
    GroupElement value;
};

inline std::string inverse_symbol(const std::string& name) { return name + "^-1"; }

/// The usual generating set of each finitely generated group kind:
/// free:r and zk:k get a, b, c, ...; heis gets a = H(0,1,0), b = H(1,0,0);
/// prod(S,T) gets the generators of S and T suffixed with 1 and 2.
inline std::vector<NamedGenerator> standard_generators(const GroupSpec& spec)
{
    using K = GroupSpec::Kind;
    auto letter = [](std::size_t i) {
        return i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i);
    };
    std::vector<NamedGenerator> out;
    switch (spec.kind()) {
    case K::Free:
        for (std::size_t i = 0; i < spec.size(); ++i)
            out.push_back({letter(i), ReducedWord::generator(i)});
        return out;
    case K::FreeAbelian:
        for (std::size_t i = 0; i < spec.size(); ++i) {
            IntVector v{std::vector<Integer>(spec.size(), Integer(0))};
            v.coords[i] = 1;
            out.push_back({letter(i), v});
        }
        return out;
    case K::Heisenberg:
        out.push_back({"a", HeisenbergTriple::a()});
        out.push_back({"b", HeisenbergTriple::b()});
        return out;
    case K::Product: {
        for (auto& g : standard_generators(spec.left()))
            out.push_back({g.name + "1", GroupElement::pair(g.value, identity(spec.right()))});
        for (auto& g : standard_generators(spec.right()))
            out.push_back({g.name + "2", GroupElement::pair(identity(spec.left()), g.value)});
        return out;
    }
    default:
        throw Error("no-standard-generators", spec.str() + " has no built-in generating set; pass --gens");
    }
}

/// Parses `name=element;name=element;...` against `spec`.
inline std::vector<NamedGenerator> parse_generators(const GroupSpec& spec, std::string_view text)
{
    std::vector<NamedGenerator> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string_view::npos)
            end = text.size();
        const std::string_view item = text.substr(start, end - start);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error("syntax", "generator '" + std::string(item) + "' must look like name=element");
        std::string name(item.substr(0, eq));
        while (!name.empty() && name.back() == ' ')
            name.pop_back();
        while (!name.empty() && name.front() == ' ')
            name.erase(0, 1);
        if (name.empty() || name.find_first_of(" ~#^") != std::string::npos)
            throw Error("syntax", "bad generator name '" + name + "'");
        out.push_back({name, parse_element(spec, item.substr(eq + 1))});
        start = end + 1;
    }
    return out;
}

/// Symbols a, a^-1, b, b^-1, ... in generator order.
inline std::vector<Symbol> generator_alphabet(const std::vector<NamedGenerator>& gens)
{
    std::vector<Symbol> out;
    for (const auto& g : gens) {
        out.push_back(g.name);
        out.push_back(inverse_symbol(g.name));
    }
    return out;
}

/// Value of a word over generator symbols. Throws "unknown-symbol".
inline GroupElement evaluate_word(const GroupSpec& spec, const std::vector<NamedGenerator>& gens, const Word& w)
{
    GroupElement acc = identity(spec);
    for (const auto& s : w) {
        bool found = false;
        for (const auto& g : gens) {
            if (s == g.name) {
                acc = group_mul(spec, acc, g.value);
                found = true;
                break;
            }
            if (s == inverse_symbol(g.name)) {
                acc = group_mul(spec, acc, group_inverse(spec, g.value));
                found = true;
                break;
            }
        }
        if (!found)
            throw Error("unknown-symbol", "'" + s + "' is not a generator symbol");
    }
    return acc;
}

/// Formal inverse of a word over generator symbols: reversed, each letter inverted.
inline Word inverse_word(const Word& w)
{
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const std::string& s = *it;
        if (s.size() > 3 && s.compare(s.size() - 3, 3, "^-1") == 0)
            out.push_back(s.substr(0, s.size() - 3));
        else
            out.push_back(inverse_symbol(s));
    }
    return out;
}

} // namespace gramata
