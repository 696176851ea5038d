#pragma once

/**
 * @file analysis.hpp
 * @brief Cayley-graph growth, n-dissimilarity counts, and the growth checks
 * that tie word-problem languages to automaton configuration counts.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "budget.hpp"
#include "efa.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "group.hpp"
#include "oracles.hpp"
#include "simulator.hpp"

namespace gramata {

// ---------------------------------------------------------------------------
// Growth

struct GrowthTable
{
    /// counts[r] = |{g : |g|_X <= r}| for r = 0..radius.
    std::vector<std::size_t> counts;

    std::size_t radius() const { return counts.empty() ? 0 : counts.size() - 1; }
};

/// One ball element together with a shortest word reaching it.
struct BallElement
{
    GroupElement element;
    Word word;
};

namespace detail {

inline std::vector<NamedGenerator> close_under_inverses(const GroupSpec& spec, const std::vector<NamedGenerator>& gens)
{
    std::vector<NamedGenerator> out;
    std::unordered_set<std::string> seen;
    auto add = [&](const std::string& name, const GroupElement& g) {
        if (seen.insert(g.str()).second)
            out.push_back({name, g});
    };
    for (const auto& g : gens) {
        check_element(spec, g.value);
        add(g.name, g.value);
        add(inverse_symbol(g.name), group_inverse(spec, g.value));
    }
    return out;
}

} // namespace detail

/// Breadth-first ball of the given radius: every element within distance
/// `radius` of the identity, in BFS order, each with the first shortest word
/// found (generators tried in order, each followed by its inverse).
/// Throws "memory-guard" past the element limit.
inline std::vector<std::vector<BallElement>> ball_layers(const GroupSpec& spec, const std::vector<NamedGenerator>& gens,
                                                         std::size_t radius)
{
    const auto steps = detail::close_under_inverses(spec, gens);
    const std::size_t guard = memory_guard();
    std::vector<std::vector<BallElement>> layers(1);
    layers[0].push_back({identity(spec), {}});
    std::unordered_set<std::string> seen{layers[0][0].element.str()};
    for (std::size_t r = 1; r <= radius; ++r) {
        std::vector<BallElement> next;
        for (const auto& cur : layers[r - 1]) {
            for (const auto& s : steps) {
                GroupElement g = group_mul(spec, cur.element, s.value);
                if (!seen.insert(g.str()).second)
                    continue;
                if (seen.size() > guard)
                    throw Error("memory-guard", "ball exceeded " + std::to_string(guard) + " elements");
                Word w = cur.word;
                w.push_back(s.name);
                next.push_back({std::move(g), std::move(w)});
            }
        }
        layers.push_back(std::move(next));
    }
    return layers;
}

inline GrowthTable growth(const GroupSpec& spec, const std::vector<NamedGenerator>& gens, std::size_t radius)
{
    GrowthTable t;
    std::size_t total = 0;
    for (const auto& layer : ball_layers(spec, gens, radius)) {
        total += layer.size();
        t.counts.push_back(total);
    }
    return t;
}

inline GrowthTable growth(const GroupSpec& spec, const std::vector<GroupElement>& gens, std::size_t radius)
{
    std::vector<NamedGenerator> named;
    for (std::size_t i = 0; i < gens.size(); ++i)
        named.push_back({"g" + std::to_string(i), gens[i]});
    return growth(spec, named, radius);
}

/// Least-squares slope of log y against log x.
inline double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys)
{
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    return denom == 0 ? 0.0 : (static_cast<double>(n) * sxy - sx * sy) / denom;
}

/// Slope of log(count) against log(r) over the upper half of the radii
/// (r >= max(1, ceil(R/2))). Diagnostic only. Throws "too-few-radii" below 4 radii.
inline double growth_exponent_estimate(const GrowthTable& t)
{
    if (t.counts.size() < 4)
        throw Error("too-few-radii", "growth exponent needs at least 4 radii, got " + std::to_string(t.counts.size()));
    const std::size_t R = t.radius();
    std::vector<double> xs, ys;
    for (std::size_t r = std::max<std::size_t>(1, (R + 1) / 2); r <= R; ++r) {
        xs.push_back(static_cast<double>(r));
        ys.push_back(static_cast<double>(std::max<std::size_t>(t.counts[r], 1)));
    }
    return log_log_slope(xs, ys);
}

/// 2 * 3^r - 1, the ball size of the free group of rank 2.
inline std::size_t free2_growth(std::size_t r)
{
    std::size_t p = 1;
    for (std::size_t i = 0; i < r; ++i)
        p *= 3;
    return 2 * p - 1;
}

// ---------------------------------------------------------------------------
// Dissimilarity

struct DissimilarityReport
{
    std::size_t n = 0;
    std::size_t lower_bound = 0;
    std::vector<Word> witnesses;
    std::optional<std::size_t> exact;
    std::string method;  // "witness" or "exact-clique"
    bool witnesses_verified = false;
};

/// Whether w1 and w2 are n-dissimilar for `member`: some v with |w1 v| <= n,
/// |w2 v| <= n separates them. `hint` is tried first.
inline bool n_dissimilar(const Membership& member, const std::vector<Symbol>& alphabet, const Word& w1, const Word& w2,
                         std::size_t n, const std::optional<Word>& hint = std::nullopt)
{
    const std::size_t longest = std::max(w1.size(), w2.size());
    if (longest > n)
        return false;
    auto separates = [&](const Word& v) {
        Word a = w1, b = w2;
        a.insert(a.end(), v.begin(), v.end());
        b.insert(b.end(), v.begin(), v.end());
        return member(a) != member(b);
    };
    if (hint && longest + hint->size() <= n && separates(*hint))
        return true;
    for (const auto& v : all_words(alphabet, n - longest))
        if (separates(v))
            return true;
    return false;
}

/// The witness family behind N_W(G)(n) >= g_G(floor(n/2)): shortest words of
/// every element of the ball of radius floor(n/2). Every pair is checked with
/// the word-problem oracle alone, first against v = w1^-1, then by search.
inline DissimilarityReport dissimilarity_lower_bound(const GroupSpec& spec, const std::vector<NamedGenerator>& gens,
                                                     std::size_t n)
{
    DissimilarityReport rep;
    rep.n = n;
    rep.method = "witness";
    for (auto& layer : ball_layers(spec, gens, n / 2))
        for (auto& e : layer)
            rep.witnesses.push_back(std::move(e.word));
    rep.lower_bound = rep.witnesses.size();

    const NamedOracle wp = word_problem_oracle(spec, gens);
    rep.witnesses_verified = true;
    for (std::size_t i = 0; i < rep.witnesses.size() && rep.witnesses_verified; ++i)
        for (std::size_t j = i + 1; j < rep.witnesses.size(); ++j)
            if (!n_dissimilar(wp.contains, wp.alphabet, rep.witnesses[i], rep.witnesses[j], n,
                              inverse_word(rep.witnesses[i]))) {
                rep.witnesses_verified = false;
                break;
            }
    return rep;
}

namespace detail {

/// Maximum clique by branch and bound with greedy-coloring bounds.
class MaxClique
{
public:
    explicit MaxClique(const std::vector<std::vector<bool>>& adj) : adj_(adj) {}

    std::vector<std::size_t> solve()
    {
        const std::size_t n = adj_.size();
        // Greedy seed: repeatedly take the candidate with most neighbours among candidates.
        std::vector<std::size_t> cand(n);
        for (std::size_t i = 0; i < n; ++i)
            cand[i] = i;
        {
            std::vector<std::size_t> c = cand, clique;
            while (!c.empty()) {
                std::size_t best = c[0], best_deg = 0;
                for (std::size_t v : c) {
                    std::size_t d = 0;
                    for (std::size_t u : c)
                        d += adj_[v][u];
                    if (d > best_deg || (d == best_deg && v < best)) {
                        best = v;
                        best_deg = d;
                    }
                }
                clique.push_back(best);
                std::vector<std::size_t> nc;
                for (std::size_t u : c)
                    if (adj_[best][u])
                        nc.push_back(u);
                c = std::move(nc);
            }
            best_ = clique;
        }
        std::vector<std::size_t> current;
        expand(current, cand);
        std::sort(best_.begin(), best_.end());
        return best_;
    }

private:
    void expand(std::vector<std::size_t>& current, std::vector<std::size_t> cand)
    {
        // Greedy coloring; process vertices in decreasing color order.
        std::vector<std::size_t> order, colors;
        color_sort(cand, order, colors);
        for (std::size_t k = order.size(); k-- > 0;) {
            if (current.size() + colors[k] <= best_.size())
                return;
            const std::size_t v = order[k];
            current.push_back(v);
            std::vector<std::size_t> next;
            for (std::size_t i = 0; i < k; ++i)
                if (adj_[v][order[i]])
                    next.push_back(order[i]);
            if (next.empty()) {
                if (current.size() > best_.size())
                    best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
        }
    }

    void color_sort(const std::vector<std::size_t>& cand, std::vector<std::size_t>& order,
                    std::vector<std::size_t>& colors) const
    {
        std::vector<std::vector<std::size_t>> classes;
        for (std::size_t v : cand) {
            std::size_t c = 0;
            for (; c < classes.size(); ++c) {
                bool clash = false;
                for (std::size_t u : classes[c])
                    if (adj_[v][u]) {
                        clash = true;
                        break;
                    }
                if (!clash)
                    break;
            }
            if (c == classes.size())
                classes.emplace_back();
            classes[c].push_back(v);
        }
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (std::size_t v : classes[c]) {
                order.push_back(v);
                colors.push_back(c + 1);
            }
    }

    const std::vector<std::vector<bool>>& adj_;
    std::vector<std::size_t> best_;
};

} // namespace detail

inline std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adj)
{
    return detail::MaxClique(adj).solve();
}

/// Exact N_L(n): the largest pairwise n-dissimilar family among words of
/// length <= n. Words of equal length with identical suffix behaviour are
/// interchangeable, so the clique search runs on those classes.
/// Throws "instance-too-large" when |alphabet|^(n+1) > 10^6.
inline DissimilarityReport dissimilarity_exact(const Membership& member, std::vector<Symbol> alphabet, std::size_t n)
{
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    {
        double size = 1;
        for (std::size_t i = 0; i <= n; ++i)
            size *= static_cast<double>(std::max<std::size_t>(alphabet.size(), 1));
        if (size > 1e6)
            throw Error("instance-too-large", "|alphabet|^(n+1) exceeds 10^6");
    }
    const auto words = all_words(alphabet, n);
    // suffix_count[k] = number of words of length <= k; all_words is ordered
    // by length, so the suffixes of length <= k are a prefix of the list.
    std::vector<std::size_t> suffix_count(n + 1, 0);
    for (const auto& w : words)
        for (std::size_t k = w.size(); k <= n; ++k)
            ++suffix_count[k];

    std::map<std::pair<std::size_t, std::vector<bool>>, std::size_t> class_of;
    std::vector<std::size_t> class_len;
    std::vector<std::vector<bool>> class_sig;
    std::vector<Word> class_rep;
    for (const auto& w : words) {
        std::vector<bool> sig(suffix_count[n - w.size()]);
        for (std::size_t i = 0; i < sig.size(); ++i) {
            Word wv = w;
            wv.insert(wv.end(), words[i].begin(), words[i].end());
            sig[i] = member(wv);
        }
        auto key = std::make_pair(w.size(), sig);
        if (class_of.emplace(key, class_len.size()).second) {
            class_len.push_back(w.size());
            class_sig.push_back(std::move(sig));
            class_rep.push_back(w);
        }
    }

    const std::size_t k = class_len.size();
    std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const std::size_t limit = suffix_count[n - std::max(class_len[i], class_len[j])];
            bool differ = false;
            for (std::size_t s = 0; s < limit && !differ; ++s)
                differ = class_sig[i][s] != class_sig[j][s];
            adj[i][j] = adj[j][i] = differ;
        }

    const auto clique = max_clique(adj);
    DissimilarityReport rep;
    rep.n = n;
    rep.method = "exact-clique";
    for (std::size_t c : clique)
        rep.witnesses.push_back(class_rep[c]);
    std::sort(rep.witnesses.begin(), rep.witnesses.end(),
              [](const Word& a, const Word& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
    rep.exact = clique.size();
    rep.lower_bound = clique.size();
    rep.witnesses_verified = true;
    for (std::size_t i = 0; i < rep.witnesses.size() && rep.witnesses_verified; ++i)
        for (std::size_t j = i + 1; j < rep.witnesses.size(); ++j)
            if (!n_dissimilar(member, alphabet, rep.witnesses[i], rep.witnesses[j], n)) {
                rep.witnesses_verified = false;
                break;
            }
    return rep;
}

inline DissimilarityReport dissimilarity_exact(const NamedOracle& o, std::size_t n)
{
    return dissimilarity_exact(o.contains, o.alphabet, n);
}

struct LemmaEvidence
{
    std::size_t n = 0;
    std::size_t growth_at_half = 0;  // g_G(floor(n/2))
    DissimilarityReport dissimilarity;
    bool holds = false;
};

/// N_W(G)(n) >= g_G(floor(n/2)), with N taken from the verified witness
/// family, or from the exact clique search when `exact` is set.
inline LemmaEvidence lemma_growth_check(const GroupSpec& spec, const std::vector<NamedGenerator>& gens, std::size_t n,
                                        bool exact = false)
{
    LemmaEvidence ev;
    ev.n = n;
    ev.growth_at_half = growth(spec, gens, n / 2).counts.back();
    if (exact) {
        ev.dissimilarity = dissimilarity_exact(word_problem_oracle(spec, gens), n);
    } else {
        ev.dissimilarity = dissimilarity_lower_bound(spec, gens, n);
    }
    ev.holds = ev.dissimilarity.witnesses_verified && ev.dissimilarity.lower_bound >= ev.growth_at_half;
    return ev;
}

// ---------------------------------------------------------------------------
// Configuration growth against dissimilarity demand

struct ProbeRow
{
    std::size_t n = 0;
    std::size_t configs_at_n = 0;         // after reading exactly n symbols
    std::size_t configs_within_n = 0;     // after reading at most n symbols
    std::size_t configs_within_half = 0;  // after reading at most floor(n/2) symbols
    std::size_t demand = 0;               // g_F2(floor(n/2))
};

struct ProbeReport
{
    std::vector<ProbeRow> rows;
    /// First probed n from which demand > configs_at_n on every later row.
    std::optional<std::size_t> crossing;
    /// The same against configs_within_half.
    std::optional<std::size_t> prefix_crossing;
    /// Growth-exponent estimate of configs_at_n over the fit lengths.
    std::optional<double> exponent;
};

namespace detail {

template <class F>
std::optional<std::size_t> crossing_point(const std::vector<ProbeRow>& rows, F column)
{
    std::optional<std::size_t> out;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
        if (it->demand > column(*it))
            out = it->n;
        else
            break;
    }
    return out;
}

} // namespace detail

/// Tabulates, per length n, the configurations reachable after reading n
/// symbols against g_F2(floor(n/2)), the size of a pairwise n-dissimilar
/// family for W(F2). The witnesses have length at most floor(n/2), so
/// `prefix_crossing` also compares the demand with the configurations
/// reachable on prefixes that short. `fit_max` bounds the lengths used for
/// the exponent estimate.
inline ProbeReport theorem_growth_probe(const EFA& machine, std::vector<std::size_t> lengths,
                                        std::optional<std::size_t> fit_max = std::nullopt)
{
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    ProbeReport rep;
    if (lengths.empty())
        return rep;
    const CompiledEfa m(machine);
    const auto counts = reachable_register_count(m, lengths.back(), machine.policy());
    for (std::size_t n : lengths)
        rep.rows.push_back({n, counts.at_length[n], counts.up_to_length[n], counts.up_to_length[n / 2],
                            free2_growth(n / 2)});
    rep.crossing = detail::crossing_point(rep.rows, [](const ProbeRow& r) { return r.configs_at_n; });
    rep.prefix_crossing = detail::crossing_point(rep.rows, [](const ProbeRow& r) { return r.configs_within_half; });

    const std::size_t top = std::min(fit_max.value_or(lengths.back()), lengths.back());
    if (top >= 3) {
        GrowthTable t;
        t.counts.assign(counts.at_length.begin(), counts.at_length.begin() + static_cast<std::ptrdiff_t>(top) + 1);
        rep.exponent = growth_exponent_estimate(t);
    }
    return rep;
}

} // namespace gramata
