#pragma once

/**
 * @file efa.hpp
 * @brief Extended finite automata over groups and the `.efa` text format.
 *
 * Document layout (one section per line, `#` starts a comment line):
 *
 *     group matq:2:det1
 *     states q0 q1 q2 q3
 *     initial q0
 *     accepting q3
 *     alphabet a
 *     budget 1 2 4                 (optional: linear log constant)
 *     transitions                  (omitted when there are none)
 *     q0 ~ q0 [[2,0],[1,1]]
 *     q0 a q1 [[1,0],[0,1]]
 *
 * A transition line is `from symbol to element`, where `~` is the empty
 * move and the element literal runs to the end of the line. The serializer
 * sorts states, symbols, accepting states and transitions, so two machines
 * that differ only in ordering produce identical documents.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "budget.hpp"
#include "error.hpp"
#include "group.hpp"

namespace gramata {

inline constexpr std::string_view kEpsilon = "~";

using Symbol = std::string;
using Word = std::vector<Symbol>;

struct Transition
{
    std::string from;
    Symbol symbol;  // kEpsilon for an empty move
    std::string to;
    GroupElement reg;

    bool is_epsilon() const { return symbol == kEpsilon; }
};

struct EFA
{
    std::vector<std::string> states;
    std::vector<Symbol> alphabet;
    GroupSpec group = GroupSpec::free(0);
    std::vector<Transition> transitions;
    std::string initial;
    std::vector<std::string> accepting;
    /// Per-machine depth budget shipped with a construction; nullopt = default policy.
    std::optional<BudgetPolicy> budget;

    BudgetPolicy policy() const { return budget.value_or(BudgetPolicy::standard()); }
};

struct Diagnostic
{
    std::string code;
    std::string message;
    std::string location;

    std::string str() const { return location + ": " + code + ": " + message; }
};

namespace detail {

inline bool valid_token(std::string_view s)
{
    if (s.empty())
        return false;
    for (char ch : s)
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '#')
            return false;
    return true;
}

inline auto transition_order_key(const Transition& t)
{
    return std::make_tuple(t.from, t.symbol, t.to, t.reg.str());
}

} // namespace detail

/// Empty iff every structural invariant holds.
inline std::vector<Diagnostic> validate(const EFA& m)
{
    std::vector<Diagnostic> out;
    std::set<std::string> states;
    for (const auto& s : m.states) {
        if (!detail::valid_token(s))
            out.push_back({"bad-token", "state name '" + s + "' is not a single token", "states"});
        if (!states.insert(s).second)
            out.push_back({"duplicate-state", "state '" + s + "' declared twice", "states"});
    }
    if (m.states.empty())
        out.push_back({"no-states", "machine declares no states", "states"});

    std::set<std::string> symbols;
    for (const auto& a : m.alphabet) {
        if (a == kEpsilon)
            out.push_back({"epsilon-in-alphabet", "'~' is reserved for empty moves", "alphabet"});
        else if (!detail::valid_token(a))
            out.push_back({"bad-token", "symbol '" + a + "' is not a single token", "alphabet"});
        if (!symbols.insert(a).second)
            out.push_back({"duplicate-symbol", "symbol '" + a + "' declared twice", "alphabet"});
    }
    if (m.alphabet.empty())
        out.push_back({"empty-alphabet", "alphabet must be nonempty", "alphabet"});

    if (!states.count(m.initial))
        out.push_back({"unknown-initial-state", "initial state '" + m.initial + "' is not declared", "initial"});
    for (const auto& q : m.accepting)
        if (!states.count(q))
            out.push_back({"unknown-accepting-state", "accepting state '" + q + "' is not declared", "accepting"});

    for (std::size_t i = 0; i < m.transitions.size(); ++i) {
        const auto& t = m.transitions[i];
        const std::string where = "transition " + std::to_string(i + 1);
        if (!states.count(t.from))
            out.push_back({"unknown-state", "source state '" + t.from + "' is not declared", where});
        if (!states.count(t.to))
            out.push_back({"unknown-state", "target state '" + t.to + "' is not declared", where});
        if (!t.is_epsilon() && !symbols.count(t.symbol))
            out.push_back({"unknown-symbol", "symbol '" + t.symbol + "' is not in the alphabet", where});
        try {
            check_element(m.group, t.reg);
        } catch (const Error& e) {
            out.push_back({e.code(), e.message(), where});
        }
    }
    return out;
}

/// Sorted copy: the representative that `serialize_efa` prints.
inline EFA canonicalize(EFA m)
{
    std::sort(m.states.begin(), m.states.end());
    std::sort(m.alphabet.begin(), m.alphabet.end());
    std::sort(m.accepting.begin(), m.accepting.end());
    m.accepting.erase(std::unique(m.accepting.begin(), m.accepting.end()), m.accepting.end());
    std::stable_sort(m.transitions.begin(), m.transitions.end(), [](const Transition& a, const Transition& b) {
        return detail::transition_order_key(a) < detail::transition_order_key(b);
    });
    return m;
}

inline std::string serialize_efa(const EFA& machine)
{
    const EFA m = canonicalize(machine);
    std::string out;
    auto line = [&](std::string_view key, const std::vector<std::string>& items) {
        out += key;
        for (const auto& s : items) {
            out += ' ';
            out += s;
        }
        out += '\n';
    };
    out += "group " + m.group.str() + "\n";
    line("states", m.states);
    out += "initial " + m.initial + "\n";
    line("accepting", m.accepting);
    line("alphabet", m.alphabet);
    if (m.budget) {
        if (m.budget->fixed)
            out += "budget fixed " + std::to_string(*m.budget->fixed) + "\n";
        else
            out += "budget " + std::to_string(m.budget->linear) + " " + std::to_string(m.budget->log) + " " +
                   std::to_string(m.budget->constant) + "\n";
    }
    if (!m.transitions.empty()) {
        out += "transitions\n";
        for (const auto& t : m.transitions)
            out += t.from + " " + t.symbol + " " + t.to + " " + t.reg.str() + "\n";
    }
    return out;
}

/// Equality up to ordering of states, symbols and transitions.
inline bool operator==(const EFA& a, const EFA& b)
{
    return serialize_efa(a) == serialize_efa(b);
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t')
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] inline void fail_at(const std::string& code, std::size_t line, std::size_t col, const std::string& what)
{
    throw Error(code, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
}

} // namespace detail

/// Parses and validates a document. Errors carry the offending line and
/// column; codes are "syntax", "unknown-state", "unknown-symbol",
/// "element-group-mismatch", "determinant-constraint", and the other
/// `validate` codes.
inline EFA parse_efa(std::string_view text)
{
    EFA m;
    bool have_group = false, have_states = false, have_initial = false, have_accepting = false,
         have_alphabet = false, in_transitions = false;
    std::vector<std::size_t> transition_lines;
    std::map<std::string, std::size_t> section_lines;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);

        const std::size_t first = raw.find_first_not_of(" \t");
        if (first == std::string_view::npos || raw[first] == '#') {
            if (end == text.size())
                break;
            continue;
        }
        const std::size_t key_end = raw.find_first_of(" \t", first);
        const std::string key(raw.substr(first, key_end == std::string_view::npos ? raw.size() - first : key_end - first));
        const std::string_view rest = key_end == std::string_view::npos ? std::string_view{} : raw.substr(key_end);
        auto need_unique = [&](bool& flag) {
            if (flag)
                detail::fail_at("syntax", line_no, first + 1, "section '" + key + "' appears twice");
            if (in_transitions)
                detail::fail_at("syntax", line_no, first + 1, "header section '" + key + "' after transitions");
            flag = true;
            section_lines[key] = line_no;
        };

        if (!in_transitions && key == "group") {
            need_unique(have_group);
            try {
                m.group = GroupSpec::parse(rest);
            } catch (const Error& e) {
                detail::fail_at(e.code(), line_no, key_end + 2, e.message());
            }
        } else if (!in_transitions && key == "states") {
            need_unique(have_states);
            m.states = detail::split_ws(rest);
        } else if (!in_transitions && key == "initial") {
            need_unique(have_initial);
            auto toks = detail::split_ws(rest);
            if (toks.size() != 1)
                detail::fail_at("syntax", line_no, first + 1, "'initial' takes exactly one state");
            m.initial = toks[0];
        } else if (!in_transitions && key == "accepting") {
            need_unique(have_accepting);
            m.accepting = detail::split_ws(rest);
        } else if (!in_transitions && key == "alphabet") {
            need_unique(have_alphabet);
            m.alphabet = detail::split_ws(rest);
        } else if (!in_transitions && key == "budget") {
            auto toks = detail::split_ws(rest);
            try {
                if (toks.size() == 2 && toks[0] == "fixed")
                    m.budget = BudgetPolicy::constant_depth(std::stoul(toks[1]));
                else if (toks.size() == 3)
                    m.budget = BudgetPolicy::affine(std::stol(toks[0]), std::stol(toks[1]), std::stol(toks[2]));
                else
                    throw std::invalid_argument("arity");
            } catch (const std::logic_error&) {
                detail::fail_at("syntax", line_no, first + 1, "budget takes 'L G C' or 'fixed N'");
            }
        } else if (!in_transitions && key == "transitions") {
            if (!rest.empty() && rest.find_first_not_of(" \t") != std::string_view::npos)
                detail::fail_at("syntax", line_no, key_end + 2, "unexpected text after 'transitions'");
            in_transitions = true;
        } else if (in_transitions) {
            // from symbol to element...
            std::size_t pos = first;
            std::string fields[3];
            std::size_t cols[3];
            for (int f = 0; f < 3; ++f) {
                pos = raw.find_first_not_of(" \t", pos);
                if (pos == std::string_view::npos)
                    detail::fail_at("syntax", line_no, raw.size() + 1, "transition needs 'from symbol to element'");
                std::size_t e = raw.find_first_of(" \t", pos);
                if (e == std::string_view::npos)
                    e = raw.size();
                fields[f] = std::string(raw.substr(pos, e - pos));
                cols[f] = pos + 1;
                pos = e;
            }
            const std::size_t elem_start = raw.find_first_not_of(" \t", pos);
            if (elem_start == std::string_view::npos)
                detail::fail_at("syntax", line_no, raw.size() + 1, "transition is missing its register element");
            if (!have_group)
                detail::fail_at("syntax", line_no, 1, "transitions before the group declaration");
            if (!have_states || std::find(m.states.begin(), m.states.end(), fields[0]) == m.states.end())
                detail::fail_at("unknown-state", line_no, cols[0], "state '" + fields[0] + "' is not declared");
            if (std::find(m.states.begin(), m.states.end(), fields[2]) == m.states.end())
                detail::fail_at("unknown-state", line_no, cols[2], "state '" + fields[2] + "' is not declared");
            if (fields[1] != kEpsilon && std::find(m.alphabet.begin(), m.alphabet.end(), fields[1]) == m.alphabet.end())
                detail::fail_at("unknown-symbol", line_no, cols[1], "symbol '" + fields[1] + "' is not in the alphabet");
            GroupElement reg;
            try {
                reg = parse_element(m.group, raw.substr(elem_start));
            } catch (const Error& e) {
                detail::fail_at(e.code(), line_no, elem_start + 1, e.message());
            }
            m.transitions.push_back({fields[0], fields[1], fields[2], std::move(reg)});
            transition_lines.push_back(line_no);
        } else {
            detail::fail_at("syntax", line_no, first + 1, "unknown section '" + key + "'");
        }
        if (end == text.size())
            break;
    }

    for (auto [flag, name] : {std::pair{have_group, "group"}, std::pair{have_states, "states"},
                              std::pair{have_initial, "initial"}, std::pair{have_accepting, "accepting"},
                              std::pair{have_alphabet, "alphabet"}})
        if (!flag)
            throw Error("syntax", std::string("missing section '") + name + "'");

    const auto diags = validate(m);
    if (!diags.empty()) {
        const auto& d = diags.front();
        std::size_t line = 0;
        if (d.location.rfind("transition ", 0) == 0)
            line = transition_lines.at(std::stoul(d.location.substr(11)) - 1);
        else if (section_lines.count(d.location))
            line = section_lines[d.location];
        throw Error(d.code, "line " + std::to_string(line) + ": " + d.message);
    }
    return m;
}

} // namespace gramata
