#pragma once

/**
 * @file simulator.hpp
 * @brief Budget-bounded nondeterministic execution of group automata.
 *
 * A run explores configurations (state, position, register) breadth-first by
 * depth, where depth counts every transition taken (empty moves included).
 * The search is capped at `policy(|w|)`; the verdict is
 *
 *   Accept           an accepting configuration (accepting state, whole word
 *                    read, identity register) was reached within the cap;
 *   Reject           no accepting computation of length <= cap exists, and
 *                    either the search closed or some computation reached an
 *                    accepting state with the word fully read (so the cap did
 *                    not hide every complete run);
 *   BudgetExhausted  neither: the cap (or the memory guard) cut the search
 *                    before any complete run existed to be judged.
 *
 * A word that the underlying automaton (registers ignored) cannot read to an
 * accepting state at all is rejected outright.
 *
 * Two configurations that agree on (state, position, register) have the same
 * future, so the visited set keyed by their canonical serialization never
 * changes a verdict. Configurations that cannot reach an accepting state
 * structurally (ignoring the register) are dropped as well.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "efa.hpp"
#include "error.hpp"
#include "group.hpp"

namespace gramata {

enum class Verdict { Accept, Reject, BudgetExhausted };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Accept: return "Accept";
    case Verdict::Reject: return "Reject";
    case Verdict::BudgetExhausted: return "BudgetExhausted";
    }
    return "?";
}

struct RunStats
{
    std::size_t expanded = 0;        // configurations whose successors were generated
    std::size_t configurations = 0;  // distinct configurations stored
    std::size_t max_depth = 0;
    std::optional<std::size_t> accepting_depth;
    std::size_t budget = 0;
};

struct RunResult
{
    Verdict verdict = Verdict::Reject;
    RunStats stats;
    /// Indices into the machine's transition list along the accepting path.
    std::vector<std::size_t> certificate;
    bool memory_guard_hit = false;
};

struct SearchOptions
{
    bool dedup = true;
    bool prune_dead = true;
    std::size_t max_configurations = 0;  // 0 = memory guard default
};

/// 10^7 unless GRAMATA_MEM_GUARD overrides it.
inline std::size_t memory_guard()
{
    if (const char* env = std::getenv("GRAMATA_MEM_GUARD")) {
        try {
            const auto v = std::stoull(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 10'000'000;
}

struct Configuration
{
    std::size_t state = 0;
    std::size_t position = 0;
    GroupElement reg;

    std::string key() const { return std::to_string(state) + ":" + std::to_string(position) + ":" + reg.str(); }
};

/// Index-based view of an EFA used by the search. Built once per machine.
class CompiledEfa
{
public:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Edge
    {
        std::size_t symbol;  // kNone for an empty move
        std::size_t to;
        std::size_t transition;  // index into machine().transitions
    };

    explicit CompiledEfa(EFA m) : machine_(std::move(m))
    {
        const auto diags = validate(machine_);
        if (!diags.empty())
            throw Error(diags.front().code, diags.front().message);
        for (std::size_t i = 0; i < machine_.states.size(); ++i)
            state_index_[machine_.states[i]] = i;
        for (std::size_t i = 0; i < machine_.alphabet.size(); ++i)
            symbol_index_[machine_.alphabet[i]] = i;
        const std::size_t n = machine_.states.size();
        const std::size_t k = machine_.alphabet.size();
        edges_.resize(n);
        accepting_.assign(n, false);
        for (const auto& q : machine_.accepting)
            accepting_[state_index_.at(q)] = true;
        initial_ = state_index_.at(machine_.initial);
        for (std::size_t i = 0; i < machine_.transitions.size(); ++i) {
            const auto& t = machine_.transitions[i];
            edges_[state_index_.at(t.from)].push_back(
                {t.is_epsilon() ? kNone : symbol_index_.at(t.symbol), state_index_.at(t.to), i});
        }

        // Empty-move distance to an accepting state (reverse BFS over empty moves).
        eps_dist_accept_.assign(n, kNone);
        std::vector<std::size_t> queue;
        for (std::size_t s = 0; s < n; ++s)
            if (accepting_[s]) {
                eps_dist_accept_[s] = 0;
                queue.push_back(s);
            }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t s = queue[head];
            for (std::size_t p = 0; p < n; ++p)
                for (const auto& e : edges_[p])
                    if (e.symbol == kNone && e.to == s && eps_dist_accept_[p] == kNone) {
                        eps_dist_accept_[p] = eps_dist_accept_[s] + 1;
                        queue.push_back(p);
                    }
        }

        // Which symbols can be read next after empty moves only, and whether
        // an accepting state is reachable at all afterwards.
        can_read_next_.assign(n, std::vector<bool>(k, false));
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<bool> seen(n, false);
            std::vector<std::size_t> stack{s};
            seen[s] = true;
            while (!stack.empty()) {
                const std::size_t p = stack.back();
                stack.pop_back();
                for (const auto& e : edges_[p]) {
                    if (e.symbol != kNone) {
                        if (co_accessible(e.to))
                            can_read_next_[s][e.symbol] = true;
                    } else if (!seen[e.to]) {
                        seen[e.to] = true;
                        stack.push_back(e.to);
                    }
                }
            }
        }
    }

    const EFA& machine() const { return machine_; }
    const GroupSpec& group() const { return machine_.group; }
    std::size_t initial() const { return initial_; }
    std::size_t state_count() const { return edges_.size(); }
    bool accepting(std::size_t s) const { return accepting_[s]; }
    const std::vector<Edge>& edges(std::size_t s) const { return edges_[s]; }

    /// Symbol indices of `w`. Throws "unknown-symbol".
    std::vector<std::size_t> encode(const Word& w) const
    {
        std::vector<std::size_t> out;
        out.reserve(w.size());
        for (const auto& a : w) {
            auto it = symbol_index_.find(a);
            if (it == symbol_index_.end())
                throw Error("unknown-symbol", "symbol '" + a + "' is not in the machine alphabet");
            out.push_back(it->second);
        }
        return out;
    }

    /// Structural test, register ignored: can (s, pos) still reach acceptance?
    bool structurally_live(std::size_t s, std::size_t pos, const std::vector<std::size_t>& word) const
    {
        if (pos == word.size())
            return eps_dist_accept_[s] != kNone;
        return can_read_next_[s][word[pos]];
    }

    /// Lower bound on the transitions still needed from (s, pos).
    std::size_t min_remaining(std::size_t s, std::size_t pos, const std::vector<std::size_t>& word) const
    {
        if (pos == word.size())
            return eps_dist_accept_[s];
        return word.size() - pos;
    }

    /// Length of the shortest path that reads all of `word` and ends in an
    /// accepting state, registers ignored; nullopt if there is none.
    std::optional<std::size_t> shortest_complete_run(const std::vector<std::size_t>& word) const
    {
        const std::size_t n = state_count();
        const std::size_t cols = word.size() + 1;
        std::vector<std::size_t> dist(n * cols, kNone);
        std::vector<std::size_t> queue{initial_ * cols};
        dist[initial_ * cols] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t s = queue[head] / cols, pos = queue[head] % cols;
            if (pos == word.size() && accepting_[s])
                return dist[queue[head]];
            for (const auto& e : edges_[s]) {
                std::size_t p = pos;
                if (e.symbol != kNone) {
                    if (pos == word.size() || word[pos] != e.symbol)
                        continue;
                    ++p;
                }
                const std::size_t id = e.to * cols + p;
                if (dist[id] == kNone) {
                    dist[id] = dist[queue[head]] + 1;
                    queue.push_back(id);
                }
            }
        }
        return std::nullopt;
    }

private:
    bool co_accessible(std::size_t s) const
    {
        if (co_accessible_.empty()) {
            // Reverse reachability to accepting states over all transitions.
            const std::size_t n = edges_.size();
            co_accessible_.assign(n, false);
            std::vector<std::size_t> queue;
            for (std::size_t q = 0; q < n; ++q)
                if (accepting_[q]) {
                    co_accessible_[q] = true;
                    queue.push_back(q);
                }
            for (std::size_t head = 0; head < queue.size(); ++head)
                for (std::size_t p = 0; p < n; ++p)
                    for (const auto& e : edges_[p])
                        if (e.to == queue[head] && !co_accessible_[p]) {
                            co_accessible_[p] = true;
                            queue.push_back(p);
                        }
        }
        return co_accessible_[s];
    }

    EFA machine_;
    std::unordered_map<std::string, std::size_t> state_index_;
    std::unordered_map<std::string, std::size_t> symbol_index_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<bool> accepting_;
    std::size_t initial_ = 0;
    std::vector<std::size_t> eps_dist_accept_;
    std::vector<std::vector<bool>> can_read_next_;
    mutable std::vector<bool> co_accessible_;
};

/// Successors of `c`: one per applicable transition, register right-multiplied.
inline std::vector<Configuration> step(const CompiledEfa& m, const Configuration& c, const Word& word)
{
    const auto w = m.encode(word);
    std::vector<Configuration> out;
    for (const auto& e : m.edges(c.state)) {
        if (e.symbol != CompiledEfa::kNone && (c.position >= w.size() || w[c.position] != e.symbol))
            continue;
        out.push_back({e.to, c.position + (e.symbol == CompiledEfa::kNone ? 0 : 1),
                       group_mul(m.group(), c.reg, m.machine().transitions[e.transition].reg)});
    }
    return out;
}

namespace detail {

/// Re-multiplies the labels on `path` and checks it is an accepting run on `word`.
inline bool certificate_holds(const CompiledEfa& m, const std::vector<std::size_t>& path,
                              const std::vector<std::size_t>& word)
{
    const auto& transitions = m.machine().transitions;
    std::size_t state = m.initial();
    std::size_t pos = 0;
    GroupElement reg = identity(m.group());
    std::unordered_map<std::string, std::size_t> sym;
    for (std::size_t i = 0; i < m.machine().alphabet.size(); ++i)
        sym[m.machine().alphabet[i]] = i;
    for (std::size_t idx : path) {
        const auto& t = transitions.at(idx);
        if (t.from != m.machine().states[state])
            return false;
        if (!t.is_epsilon()) {
            if (pos >= word.size() || sym.at(t.symbol) != word[pos])
                return false;
            ++pos;
        }
        reg = group_mul(m.group(), reg, t.reg);
        state = static_cast<std::size_t>(std::find(m.machine().states.begin(), m.machine().states.end(), t.to) -
                                         m.machine().states.begin());
    }
    return pos == word.size() && m.accepting(state) && is_identity(m.group(), reg);
}

} // namespace detail

inline RunResult accepts(const CompiledEfa& m, const Word& input, const BudgetPolicy& policy,
                         const SearchOptions& opts = {})
{
    const auto word = m.encode(input);
    const std::size_t n = word.size();
    const std::size_t budget = policy(n);
    const std::size_t guard = opts.max_configurations ? opts.max_configurations : memory_guard();
    const GroupSpec& group = m.group();
    const auto& transitions = m.machine().transitions;

    struct Node
    {
        Configuration config;
        std::size_t depth;
        std::size_t parent;
        std::size_t via;  // transition index
    };
    constexpr std::size_t kRoot = std::numeric_limits<std::size_t>::max();

    RunResult result;
    result.stats.budget = budget;
    std::vector<Node> nodes;
    std::unordered_set<std::string> visited;
    bool truncated = false;
    bool complete_run_seen = false;

    auto finish_accept = [&](std::size_t idx) {
        std::vector<std::size_t> path;
        for (std::size_t i = idx; nodes[i].parent != kRoot; i = nodes[i].parent)
            path.push_back(nodes[i].via);
        std::reverse(path.begin(), path.end());
        if (!detail::certificate_holds(m, path, word))
            throw Error("internal", "accepting certificate failed re-verification");
        result.verdict = Verdict::Accept;
        result.certificate = std::move(path);
        result.stats.accepting_depth = nodes[idx].depth;
        result.stats.configurations = nodes.size();
    };

    auto is_goal = [&](const Configuration& c) {
        if (c.position != n || !m.accepting(c.state))
            return false;
        complete_run_seen = true;
        return is_identity(group, c.reg);
    };

    Configuration start{m.initial(), 0, identity(group)};
    if (!opts.prune_dead || m.structurally_live(start.state, 0, word)) {
        if (opts.prune_dead && m.min_remaining(start.state, 0, word) > budget) {
            truncated = true;
        } else {
            if (opts.dedup)
                visited.insert(start.key());
            nodes.push_back({std::move(start), 0, kRoot, 0});
            if (is_goal(nodes[0].config)) {
                finish_accept(0);
                return result;
            }
        }
    }

    // nodes is append-only and ordered by depth, so a cursor over it is the BFS queue.
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        const std::size_t depth = nodes[head].depth;
        result.stats.max_depth = std::max(result.stats.max_depth, depth);
        ++result.stats.expanded;
        for (const auto& e : m.edges(nodes[head].config.state)) {
            const Configuration& c = nodes[head].config;
            std::size_t pos = c.position;
            if (e.symbol != CompiledEfa::kNone) {
                if (pos >= n || word[pos] != e.symbol)
                    continue;
                ++pos;
            }
            if (opts.prune_dead && !m.structurally_live(e.to, pos, word))
                continue;
            const std::size_t next_depth = depth + 1;
            if (next_depth > budget ||
                (opts.prune_dead && next_depth + m.min_remaining(e.to, pos, word) > budget)) {
                truncated = true;
                continue;
            }
            Configuration next{e.to, pos, group_mul(group, c.reg, transitions[e.transition].reg)};
            if (opts.dedup && !visited.insert(next.key()).second)
                continue;
            if (nodes.size() >= guard) {
                result.memory_guard_hit = true;
                truncated = true;
                break;
            }
            nodes.push_back({std::move(next), next_depth, head, e.transition});
            result.stats.max_depth = std::max(result.stats.max_depth, next_depth);
            if (is_goal(nodes.back().config)) {
                finish_accept(nodes.size() - 1);
                return result;
            }
        }
        if (result.memory_guard_hit)
            break;
    }

    result.stats.configurations = nodes.size();
    if (result.memory_guard_hit || (truncated && !complete_run_seen && m.shortest_complete_run(word)))
        result.verdict = Verdict::BudgetExhausted;
    else
        result.verdict = Verdict::Reject;
    return result;
}

inline RunResult accepts(const EFA& m, const Word& word, const BudgetPolicy& policy, const SearchOptions& opts = {})
{
    return accepts(CompiledEfa(m), word, policy, opts);
}

// ---------------------------------------------------------------------------
// Words

/// All words over `alphabet` (in the given order) of length <= max_len,
/// length first, then lexicographically by symbol position.
inline std::vector<Word> all_words(const std::vector<Symbol>& alphabet, std::size_t max_len)
{
    std::vector<Word> out{Word{}};
    std::size_t level_start = 0;
    for (std::size_t len = 1; len <= max_len && !alphabet.empty(); ++len) {
        const std::size_t level_end = out.size();
        for (std::size_t i = level_start; i < level_end; ++i)
            for (const auto& a : alphabet) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        level_start = level_end;
    }
    return out;
}

/// Concatenation when every symbol is one character, space-joined otherwise;
/// the empty word prints as `ε`.
inline std::string word_str(const Word& w)
{
    if (w.empty())
        return "ε";
    bool single = true;
    for (const auto& a : w)
        single = single && a.size() == 1;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single)
            out += ' ';
        out += w[i];
    }
    return out;
}

/// Inverse of `word_str`: whitespace-separated tokens if the text has any
/// whitespace, otherwise one symbol per character. `ε` and `""` are empty.
inline Word parse_word(std::string_view text)
{
    if (text.empty() || text == "ε")
        return {};
    if (text.find_first_of(" \t") != std::string_view::npos)
        return detail::split_ws(text);
    Word w;
    for (char ch : text)
        w.emplace_back(1, ch);
    return w;
}

/// Runs `fn(i)` for i in [0, count) on `workers` threads. Results must be
/// written to per-index slots so the outcome is independent of scheduling.
inline void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn)
{
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

// ---------------------------------------------------------------------------
// Enumeration and oracle comparison

struct Enumeration
{
    std::vector<Word> accepted;          // length-then-lex
    std::vector<Word> budget_exhausted;  // warnings: undecided words
};

inline Enumeration enumerate(const CompiledEfa& m, std::size_t max_len, const BudgetPolicy& policy,
                             std::size_t workers = 1, const SearchOptions& opts = {})
{
    auto alphabet = m.machine().alphabet;
    std::sort(alphabet.begin(), alphabet.end());
    const auto words = all_words(alphabet, max_len);
    std::vector<Verdict> verdicts(words.size());
    parallel_for(words.size(), workers, [&](std::size_t i) { verdicts[i] = accepts(m, words[i], policy, opts).verdict; });
    Enumeration out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (verdicts[i] == Verdict::Accept)
            out.accepted.push_back(words[i]);
        else if (verdicts[i] == Verdict::BudgetExhausted)
            out.budget_exhausted.push_back(words[i]);
    }
    return out;
}

struct EquivEntry
{
    Word word;
    bool expected = false;
    Verdict got = Verdict::Reject;
    RunStats stats;
};

struct EquivReport
{
    std::size_t words_checked = 0;
    std::vector<EquivEntry> mismatches;
    std::vector<EquivEntry> budget_exhausted;

    bool passed() const { return mismatches.empty() && budget_exhausted.empty(); }

    /// CLI exit status: 0 pass, 1 mismatch, 2 undecided.
    int exit_code() const { return !mismatches.empty() ? 1 : !budget_exhausted.empty() ? 2 : 0; }
};

using Membership = std::function<bool(const Word&)>;

inline EquivReport equiv_check(const CompiledEfa& m, const Membership& oracle, std::vector<Symbol> alphabet,
                               std::size_t max_len, const BudgetPolicy& policy, std::size_t workers = 1,
                               const SearchOptions& opts = {})
{
    std::sort(alphabet.begin(), alphabet.end());
    const auto words = all_words(alphabet, max_len);
    std::vector<EquivEntry> entries(words.size());
    parallel_for(words.size(), workers, [&](std::size_t i) {
        const auto r = accepts(m, words[i], policy, opts);
        entries[i] = {words[i], oracle(words[i]), r.verdict, r.stats};
    });
    EquivReport report;
    report.words_checked = words.size();
    for (auto& e : entries) {
        if (e.got == Verdict::BudgetExhausted)
            report.budget_exhausted.push_back(std::move(e));
        else if ((e.got == Verdict::Accept) != e.expected)
            report.mismatches.push_back(std::move(e));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Configuration counting

struct RegisterCountTable
{
    /// at_length[k]: distinct (state, register) pairs reachable after
    /// consuming some word of length exactly k.
    std::vector<std::size_t> at_length;
    /// up_to_length[k]: the same, over all words of length <= k.
    std::vector<std::size_t> up_to_length;
};

/// Explores every input at once: a symbol transition may consume any symbol.
/// A pair counts for length k when it is reached within policy(k) transitions.
inline RegisterCountTable reachable_register_count(const CompiledEfa& m, std::size_t max_len,
                                                   const BudgetPolicy& policy)
{
    const std::size_t cap = policy(max_len);
    const std::size_t guard = memory_guard();
    const GroupSpec& group = m.group();
    struct Node
    {
        std::size_t state, consumed, depth;
        GroupElement reg;
    };
    std::vector<Node> nodes;
    std::unordered_set<std::string> seen;
    auto key = [](std::size_t s, std::size_t k, const GroupElement& g) {
        return std::to_string(s) + ":" + std::to_string(k) + ":" + g.str();
    };
    nodes.push_back({m.initial(), 0, 0, identity(group)});
    seen.insert(key(m.initial(), 0, nodes[0].reg));
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (nodes[head].depth >= cap)
            continue;
        for (const auto& e : m.edges(nodes[head].state)) {
            const std::size_t consumed = nodes[head].consumed + (e.symbol == CompiledEfa::kNone ? 0 : 1);
            if (consumed > max_len)
                continue;
            GroupElement reg = group_mul(group, nodes[head].reg, m.machine().transitions[e.transition].reg);
            if (!seen.insert(key(e.to, consumed, reg)).second)
                continue;
            if (nodes.size() >= guard)
                throw Error("memory-guard", "configuration count exceeded " + std::to_string(guard));
            nodes.push_back({e.to, consumed, nodes[head].depth + 1, std::move(reg)});
        }
    }

    RegisterCountTable table;
    std::vector<std::unordered_set<std::string>> per_length(max_len + 1);
    for (const auto& nd : nodes)
        if (nd.depth <= policy(nd.consumed))
            per_length[nd.consumed].insert(std::to_string(nd.state) + ":" + nd.reg.str());
    std::unordered_set<std::string> cumulative;
    for (std::size_t k = 0; k <= max_len; ++k) {
        table.at_length.push_back(per_length[k].size());
        cumulative.insert(per_length[k].begin(), per_length[k].end());
        table.up_to_length.push_back(cumulative.size());
    }
    return table;
}

} // namespace gramata
