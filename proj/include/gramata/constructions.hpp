#pragma once

/**
 * @file constructions.hpp
 * @brief Builders for the concrete group automata: unary powers of two over
 * 2x2 rational matrices, the three Heisenberg machines, a Z^2 machine for a^n b^n c^n,
 * word-problem acceptors, and the Q+ to SL(2,Q) relabeling.
 */

#include <string>
#include <vector>

#include "budget.hpp"
#include "efa.hpp"
#include "embeddings.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "group.hpp"
#include "heisenberg.hpp"
#include "matrix.hpp"
#include "rational.hpp"

namespace gramata {

namespace detail {

inline ExactMatrix mat2(const char* a, const char* b, const char* c, const char* d)
{
    return ExactMatrix{{Rational::parse(a), Rational::parse(b)}, {Rational::parse(c), Rational::parse(d)}};
}

inline EFA skeleton(GroupSpec group, std::vector<std::string> states, std::vector<Symbol> alphabet,
                    std::string initial, std::vector<std::string> accepting, BudgetPolicy budget)
{
    EFA m;
    m.group = std::move(group);
    m.states = std::move(states);
    m.alphabet = std::move(alphabet);
    m.initial = std::move(initial);
    m.accepting = std::move(accepting);
    m.budget = budget;
    return m;
}

inline const Symbol eps{kEpsilon};

} // namespace detail

using detail::eps;

/// {a^(2^n) : n >= 0} over GL(2,Q), built from the BS(1,2) matrices
/// A = [[1,0],[-1,1]] and B = [[1/2,0],[0,1]].
///
///   q0 --~ / A1--> q0     A1 = B^-1 A^-1 = [[2,0],[1,1]]
///   q0 --a / I --> q1
///   q1 --a / A2--> q1     A2 = A
///   q1 --~ / I --> q2
///   q2 --~ / A3--> q2     A3 = B
///   q2 --~ / I --> q3     accepting
///
/// k loops at q0 give [[2^k,0],[2^k-1,1]]; each further a subtracts 1 from the
/// corner, which vanishes iff the word has length 2^k, and k copies of A3 then
/// restore the identity.
inline EFA build_upow()
{
    EFA m = detail::skeleton(GroupSpec::matrix_q(2, DetConstraint::AnyInvertible), {"q0", "q1", "q2", "q3"}, {"a"}, "q0",
                             {"q3"}, BudgetPolicy::affine(1, 2, 4));
    const auto I = ExactMatrix::identity(2);
    const auto A = bs12::generator_a();
    const auto B = bs12::generator_b();
    m.transitions = {
        {"q0", eps, "q0", inverse(B) * inverse(A)},
        {"q0", "a", "q1", I},
        {"q1", "a", "q1", A},
        {"q1", eps, "q2", I},
        {"q2", eps, "q2", B},
        {"q2", eps, "q3", I},
    };
    return m;
}

/// {a^(2^(2n+1)) : n >= 0} over SL(2,Q).
///
///   q0 --~ / A1--> q1     A1 = [[2,0],[1,1/2]]
///   q1 --~ / A2--> q1     A2 = [[2,0],[0,1/2]]
///   q1 --~ / I --> q2
///   q2 --a / A3--> q2     A3 = [[1,0],[-1,1]]
///   q2 --~ / A4--> q3     A4 = [[1/2,0],[0,2]]
///   q3 --~ / A4--> q3     accepting
///
/// A1 A2^x = [[2^(x+1),0],[2^x,2^(-x-1)]]; reading a^m subtracts m 2^(-x-1)
/// from the lower-left entry, so it vanishes iff m = 2^(2x+1), and then x+1
/// copies of A4 restore the identity.
inline EFA build_odd_power()
{
    using detail::mat2;
    EFA m = detail::skeleton(GroupSpec::matrix_q(2, DetConstraint::One), {"q0", "q1", "q2", "q3"}, {"a"}, "q0", {"q3"},
                             BudgetPolicy::affine(1, 2, 4));
    const auto I = ExactMatrix::identity(2);
    const auto A4 = mat2("1/2", "0", "0", "2");
    m.transitions = {
        {"q0", eps, "q1", mat2("2", "0", "1", "1/2")},
        {"q1", eps, "q1", mat2("2", "0", "0", "1/2")},
        {"q1", eps, "q2", I},
        {"q2", "a", "q2", mat2("1", "0", "-1", "1")},
        {"q2", eps, "q3", A4},
        {"q3", eps, "q3", A4},
    };
    return m;
}

/// {x^p y^q z^(pq)} over the Heisenberg group: x pumps a, y pumps b (each b
/// past p a's leaves a commutator c^p), z cancels one c, then the register
/// a^p b^q is emptied by empty moves.
inline EFA build_mult()
{
    const auto a = HeisenbergTriple::a();
    const auto b = HeisenbergTriple::b();
    const auto c_inv = inverse(HeisenbergTriple::c());
    const HeisenbergTriple e{};
    EFA m = detail::skeleton(GroupSpec::heisenberg(), {"px", "py", "pz", "ca", "cb"}, {"x", "y", "z"}, "px", {"cb"},
                             BudgetPolicy::affine(2, 0, 4));
    m.transitions = {
        {"px", "x", "px", a},         {"px", eps, "py", e},
        {"py", "y", "py", b},         {"py", eps, "pz", e},
        {"pz", "z", "pz", c_inv},     {"pz", eps, "ca", e},
        {"ca", eps, "ca", inverse(a)}, {"ca", eps, "cb", e},
        {"cb", eps, "cb", inverse(b)},
    };
    return m;
}

/// {x^n : n composite} over the Heisenberg group: guess a^p b^q with
/// p, q >= 2 by empty moves, read x's as c^-1 while the b's are pushed, so
/// the register returns to the identity iff n = pq.
inline EFA build_composite()
{
    const auto a = HeisenbergTriple::a();
    const auto b = HeisenbergTriple::b();
    const auto c_inv = inverse(HeisenbergTriple::c());
    EFA m = detail::skeleton(GroupSpec::heisenberg(), {"s0", "s1", "s2", "s3", "s4", "s5", "s6"}, {"x"}, "s0",
                             {"s6"}, BudgetPolicy::affine(2, 0, 8));
    m.transitions = {
        {"s0", eps, "s1", a},
        {"s1", eps, "s2", a},
        {"s2", eps, "s2", a},
        {"s2", eps, "s3", b},
        {"s3", "x", "s3", c_inv},
        {"s3", eps, "s4", b},
        {"s4", "x", "s4", c_inv},
        {"s4", eps, "s4", b},
        {"s4", eps, "s5", inverse(a)},
        {"s5", eps, "s5", inverse(a)},
        {"s5", eps, "s6", inverse(b)},
        {"s6", eps, "s6", inverse(b)},
    };
    return m;
}

/// {x^p y^(pn) : p, n >= 0} over the Heisenberg group: x pushes a, the y
/// phase interleaves empty b moves (each worth c^p) with y's read as c^-1.
inline EFA build_multiple()
{
    const auto a = HeisenbergTriple::a();
    const auto b = HeisenbergTriple::b();
    const auto c_inv = inverse(HeisenbergTriple::c());
    const HeisenbergTriple e{};
    EFA m = detail::skeleton(GroupSpec::heisenberg(), {"px", "py", "ca", "cb"}, {"x", "y"}, "px", {"cb"},
                             BudgetPolicy::affine(3, 0, 4));
    m.transitions = {
        {"px", "x", "px", a},
        {"px", eps, "py", e},
        {"py", "y", "py", c_inv},
        {"py", eps, "py", b},
        {"py", eps, "ca", e},
        {"ca", eps, "ca", inverse(a)},
        {"ca", eps, "cb", e},
        {"cb", eps, "cb", inverse(b)},
    };
    return m;
}

/// {a^n b^n c^n} over Z^2 with a = [1,0], b = [-1,1], c = [0,-1].
inline EFA build_anbncn()
{
    const IntVector zero{{Integer(0), Integer(0)}};
    EFA m = detail::skeleton(GroupSpec::free_abelian(2), {"qa", "qb", "qc"}, {"a", "b", "c"}, "qa", {"qc"},
                             BudgetPolicy::affine(1, 0, 2));
    m.transitions = {
        {"qa", "a", "qa", IntVector{{Integer(1), Integer(0)}}},
        {"qa", eps, "qb", zero},
        {"qb", "b", "qb", IntVector{{Integer(-1), Integer(1)}}},
        {"qb", eps, "qc", zero},
        {"qc", "c", "qc", IntVector{{Integer(0), Integer(-1)}}},
    };
    return m;
}

/// One state, initial and accepting; symbol g multiplies by g and g^-1 by
/// its inverse. Accepts exactly the words that evaluate to the identity.
inline EFA build_word_problem_acceptor(const GroupSpec& spec, const std::vector<NamedGenerator>& gens)
{
    EFA m = detail::skeleton(spec, {"q0"}, generator_alphabet(gens), "q0", {"q0"}, BudgetPolicy::affine(1, 0, 0));
    for (const auto& g : gens) {
        m.transitions.push_back({"q0", g.name, "q0", g.value});
        m.transitions.push_back({"q0", inverse_symbol(g.name), "q0", group_inverse(spec, g.value)});
    }
    return m;
}

inline EFA build_word_problem_acceptor(const GroupSpec& spec)
{
    return build_word_problem_acceptor(spec, standard_generators(spec));
}

/// {w in {a,b}* : #a = #b} over Q+ with a -> 2, b -> 1/2.
inline EFA build_equal_ab_qplus()
{
    EFA m = detail::skeleton(GroupSpec::positive_rationals(), {"q0"}, {"a", "b"}, "q0", {"q0"},
                             BudgetPolicy::affine(1, 0, 0));
    m.transitions = {
        {"q0", "a", "q0", Rational(2)},
        {"q0", "b", "q0", Rational::parse("1/2")},
    };
    return m;
}

/// Relabels a Q+ automaton through s -> diag(s, 1/s); states, alphabet and
/// structure are unchanged. Throws "element-group-mismatch" for other groups
/// and "not-positive" for a non-positive label.
inline EFA transform_qplus_to_sl2q(const EFA& m)
{
    if (m.group.kind() != GroupSpec::Kind::PositiveRationals)
        throw Error("element-group-mismatch", "expected a qplus automaton, got " + m.group.str());
    EFA out = m;
    out.group = GroupSpec::matrix_q(2, DetConstraint::One);
    for (auto& t : out.transitions)
        t.reg = qplus_embed(t.reg.as<Rational>());
    return out;
}

/// Named builders used by the CLI and the corpus.
inline std::vector<std::pair<std::string, EFA (*)()>> named_constructions()
{
    return {
        {"upow", build_upow},
        {"oddpow", build_odd_power},
        {"mult", build_mult},
        {"composite", build_composite},
        {"multiple", build_multiple},
        {"anbncn", build_anbncn},
        {"equal-ab-qplus", build_equal_ab_qplus},
    };
}

/// The machines shipped as corpus/<name>.efa, keyed by file stem.
inline std::vector<std::pair<std::string, EFA>> corpus_machines()
{
    std::vector<std::pair<std::string, EFA>> out;
    for (const auto& [name, build] : named_constructions())
        out.push_back({name, canonicalize(build())});
    out.push_back({"equal-ab-sl2q", canonicalize(transform_qplus_to_sl2q(build_equal_ab_qplus()))});
    out.push_back({"wp-z", canonicalize(build_word_problem_acceptor(GroupSpec::free_abelian(1)))});
    out.push_back({"wp-z2", canonicalize(build_word_problem_acceptor(GroupSpec::free_abelian(2)))});
    out.push_back({"wp-f2", canonicalize(build_word_problem_acceptor(GroupSpec::free(2)))});
    out.push_back({"wp-heis", canonicalize(build_word_problem_acceptor(GroupSpec::heisenberg()))});
    return out;
}

} // namespace gramata
