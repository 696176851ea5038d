#pragma once

/**
 * @file oracles.hpp
 * @brief Direct membership predicates for the languages the constructions
 * recognize. No automaton is involved; these are the reference side of every
 * equivalence check.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "efa.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "group.hpp"

namespace gramata {

struct NamedOracle
{
    std::string name;
    std::vector<Symbol> alphabet;
    std::function<bool(const Word&)> contains;

    bool operator()(const Word& w) const { return contains(w); }
};

namespace lang {

/// Lengths of maximal blocks, e.g. "xxyzz" -> [(x,2),(y,1),(z,2)].
inline std::vector<std::pair<Symbol, std::size_t>> blocks(const Word& w)
{
    std::vector<std::pair<Symbol, std::size_t>> out;
    for (const auto& s : w) {
        if (!out.empty() && out.back().first == s)
            ++out.back().second;
        else
            out.push_back({s, 1});
    }
    return out;
}

/// Exponents (n_1, ..., n_k) if w = s_1^n_1 ... s_k^n_k with each n_i >= 0,
/// in the given symbol order; empty optional otherwise.
inline std::optional<std::vector<std::size_t>> ordered_counts(const Word& w, const std::vector<Symbol>& order)
{
    std::vector<std::size_t> counts(order.size(), 0);
    std::size_t slot = 0;
    for (const auto& s : w) {
        while (slot < order.size() && order[slot] != s)
            ++slot;
        if (slot == order.size())
            return std::nullopt;
        ++counts[slot];
    }
    return counts;
}

inline bool unary(const Word& w, std::string_view sym)
{
    for (const auto& s : w)
        if (s != sym)
            return false;
    return true;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline bool is_composite(std::size_t n)
{
    if (n < 4)
        return false;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return true;
    return false;
}

inline bool upow(const Word& w) { return unary(w, "a") && is_power_of_two(w.size()); }

/// a^(2^(2n+1)): a power of two with an odd exponent.
inline bool oddpow(const Word& w)
{
    if (!upow(w))
        return false;
    std::size_t e = 0;
    for (std::size_t n = w.size(); n > 1; n >>= 1)
        ++e;
    return e % 2 == 1;
}

inline bool mult(const Word& w)
{
    const auto c = ordered_counts(w, {"x", "y", "z"});
    return c && (*c)[0] * (*c)[1] == (*c)[2];
}

inline bool composite(const Word& w) { return unary(w, "x") && is_composite(w.size()); }

/// x^p y^(pn) with p, n >= 0 (p = 0 forces no y's). With `strict`, p >= 1.
inline bool multiple(const Word& w, bool strict = false)
{
    const auto c = ordered_counts(w, {"x", "y"});
    if (!c)
        return false;
    const std::size_t p = (*c)[0], s = (*c)[1];
    if (p == 0)
        return !strict && s == 0;
    return s % p == 0;
}

inline bool anbncn(const Word& w)
{
    const auto c = ordered_counts(w, {"a", "b", "c"});
    return c && (*c)[0] == (*c)[1] && (*c)[1] == (*c)[2];
}

/// (a^n b^n)*: the block decomposition is forced, so a greedy scan decides it.
inline bool anbn_star(const Word& w)
{
    const auto bl = blocks(w);
    if (bl.size() % 2 != 0)
        return false;
    for (std::size_t i = 0; i < bl.size(); i += 2)
        if (bl[i].first != "a" || bl[i + 1].first != "b" || bl[i].second != bl[i + 1].second)
            return false;
    return true;
}

inline bool equal_ab(const Word& w)
{
    long balance = 0;
    for (const auto& s : w) {
        if (s == "a")
            ++balance;
        else if (s == "b")
            --balance;
        else
            return false;
    }
    return balance == 0;
}

} // namespace lang

/// W(G, A): words over generator symbols that evaluate to the identity.
inline NamedOracle word_problem_oracle(const GroupSpec& spec, std::vector<NamedGenerator> gens)
{
    auto alphabet = generator_alphabet(gens);
    return {"WP(" + spec.str() + ")", alphabet, [spec, gens = std::move(gens)](const Word& w) {
                return is_identity(spec, evaluate_word(spec, gens, w));
            }};
}

inline std::vector<std::string> oracle_names()
{
    return {"UPOW", "ODDPOW", "MULT", "COMPOSITE", "MULTIPLE", "MULTIPLE-POS", "ANBNCN", "ANBN-STAR", "EQUAL-AB",
            "WP(<group spec>)"};
}

/// Looks up an oracle by its stable name. `WP(spec)` uses the standard
/// generators of `spec`. Throws "unknown-oracle".
inline NamedOracle oracle(std::string_view name)
{
    const std::string n(name);
    if (n == "UPOW")
        return {n, {"a"}, lang::upow};
    if (n == "ODDPOW")
        return {n, {"a"}, lang::oddpow};
    if (n == "MULT")
        return {n, {"x", "y", "z"}, lang::mult};
    if (n == "COMPOSITE")
        return {n, {"x"}, lang::composite};
    if (n == "MULTIPLE")
        return {n, {"x", "y"}, [](const Word& w) { return lang::multiple(w, false); }};
    if (n == "MULTIPLE-POS")
        return {n, {"x", "y"}, [](const Word& w) { return lang::multiple(w, true); }};
    if (n == "ANBNCN")
        return {n, {"a", "b", "c"}, lang::anbncn};
    if (n == "ANBN-STAR")
        return {n, {"a", "b"}, lang::anbn_star};
    if (n == "EQUAL-AB")
        return {n, {"a", "b"}, lang::equal_ab};
    if (n.size() > 4 && n.rfind("WP(", 0) == 0 && n.back() == ')') {
        const GroupSpec spec = GroupSpec::parse(std::string_view(n).substr(3, n.size() - 4));
        return word_problem_oracle(spec, standard_generators(spec));
    }
    throw Error("unknown-oracle", "no oracle named '" + n + "'");
}

} // namespace gramata
