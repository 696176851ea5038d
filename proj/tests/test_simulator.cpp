#include <catch_amalgamated.hpp>

#include <gramata/constructions.hpp>
#include <gramata/free_group.hpp>
#include <gramata/oracles.hpp>
#include <gramata/simulator.hpp>

#include <set>

using namespace gramata;

namespace {

EFA identity_loop()
{
    EFA m;
    m.group = GroupSpec::free(1);
    m.states = {"q"};
    m.alphabet = {"a"};
    m.initial = "q";
    m.accepting = {"q"};
    m.transitions = {{"q", "a", "q", identity(m.group)}};
    return m;
}

std::vector<std::string> words_of(const std::vector<Word>& ws)
{
    std::vector<std::string> out;
    for (const auto& w : ws)
        out.push_back(word_str(w));
    return out;
}

Verdict verdict(const EFA& m, std::string_view w, const BudgetPolicy& p)
{
    return accepts(m, parse_word(w), p).verdict;
}

} // namespace

TEST_CASE("step on the identity loop")
{
    const CompiledEfa m(identity_loop());
    const Configuration c{m.initial(), 0, identity(m.group())};
    const auto next = step(m, c, parse_word("a"));
    REQUIRE(next.size() == 1);
    CHECK(next[0].position == 1);
    CHECK(is_identity(m.group(), next[0].reg));
    CHECK(step(m, next[0], parse_word("a")).empty());
}

TEST_CASE("step at the start of the upow machine")
{
    const CompiledEfa m(build_upow());
    const Configuration c{m.initial(), 0, identity(m.group())};
    const auto next = step(m, c, parse_word("aa"));
    REQUIRE(next.size() == 2);
    std::set<std::string> got;
    for (const auto& n : next)
        got.insert(m.machine().states[n.state] + "," + std::to_string(n.position) + "," + n.reg.str());
    CHECK(got == std::set<std::string>{"q0,0,[[2,0],[1,1]]", "q1,1,[[1,0],[0,1]]"});
}

TEST_CASE("accepts on the shipped machines")
{
    const EFA up = build_upow();
    CHECK(verdict(up, "aa", up.policy()) == Verdict::Accept);
    CHECK(verdict(up, "a", up.policy()) == Verdict::Accept);
    CHECK(verdict(up, "aaa", up.policy()) == Verdict::Reject);
    CHECK(verdict(up, "", up.policy()) == Verdict::Reject);
    CHECK(verdict(up, "aa", BudgetPolicy::constant_depth(1)) == Verdict::BudgetExhausted);

    const EFA odd = build_odd_power();
    CHECK(verdict(odd, "aa", odd.policy()) == Verdict::Accept);
    CHECK(verdict(odd, "aaaa", odd.policy()) == Verdict::Reject);

    CHECK(verdict(up, "aa", BudgetPolicy::standard()) == Verdict::Accept);
    CHECK(verdict(up, "aaa", BudgetPolicy::standard()) == Verdict::Reject);
}

TEST_CASE("unknown symbol is an error")
{
    try {
        accepts(build_upow(), parse_word("ab"), BudgetPolicy::standard());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "unknown-symbol");
    }
}

TEST_CASE("accepting runs carry a checkable certificate")
{
    for (const auto& [name, m] : corpus_machines()) {
        INFO(name);
        const CompiledEfa cm(m);
        for (const auto& w : all_words(m.alphabet, m.alphabet.size() > 2 ? 3 : 5)) {
            const auto r = accepts(cm, w, m.policy());
            if (r.verdict != Verdict::Accept)
                continue;
            CHECK(detail::certificate_holds(cm, r.certificate, cm.encode(w)));
            REQUIRE(r.stats.accepting_depth);
            CHECK(*r.stats.accepting_depth == r.certificate.size());
            CHECK(r.certificate.size() <= m.policy()(w.size()));
        }
    }
}

TEST_CASE("acceptance is monotone in the budget")
{
    const std::vector<BudgetPolicy> ladder{BudgetPolicy::constant_depth(2), BudgetPolicy::constant_depth(6),
                                           BudgetPolicy::affine(1, 2, 4), BudgetPolicy::affine(2, 2, 8),
                                           BudgetPolicy::standard()};
    for (const auto& m : {build_upow(), build_odd_power(), build_anbncn(), build_multiple()}) {
        const CompiledEfa cm(m);
        for (const auto& w : all_words(m.alphabet, m.alphabet.size() > 2 ? 3 : 6)) {
            INFO(word_str(w));
            bool accepted = false;
            for (const auto& p : ladder) {
                const bool now = accepts(cm, w, p).verdict == Verdict::Accept;
                if (accepted)
                    CHECK(now);
                accepted = accepted || now;
            }
        }
    }
}

TEST_CASE("rejection is stable from the shipped budget upward")
{
    for (const auto& m : {build_upow(), build_odd_power(), build_anbncn(), build_mult(), build_multiple(),
                          build_composite()}) {
        const BudgetPolicy base = m.policy();
        const std::vector<BudgetPolicy> ladder{
            base, BudgetPolicy::affine(base.linear + 1, base.log + 1, base.constant + 4), BudgetPolicy::standard(),
            BudgetPolicy::affine(6, 8, 24)};
        const CompiledEfa cm(m);
        for (const auto& w : all_words(m.alphabet, m.alphabet.size() > 2 ? 3 : 6)) {
            INFO(word_str(w));
            const Verdict first = accepts(cm, w, ladder.front()).verdict;
            REQUIRE(first != Verdict::BudgetExhausted);
            for (const auto& p : ladder)
                CHECK(accepts(cm, w, p).verdict == first);
        }
    }
}

TEST_CASE("a budget below the shortest run can reject too early")
{
    // Six moves finish runs on a^4, none with an identity register.
    const EFA m = build_upow();
    CHECK(verdict(m, "aaaa", BudgetPolicy::constant_depth(6)) == Verdict::Reject);
    CHECK(verdict(m, "aaaa", m.policy()) == Verdict::Accept);
}

TEST_CASE("deduplication and pruning do not change verdicts")
{
    SearchOptions raw;
    raw.dedup = false;
    raw.prune_dead = false;
    for (const auto& m : {build_upow(), build_anbncn(), build_mult(), build_multiple()}) {
        const CompiledEfa cm(m);
        for (const auto& w : all_words(m.alphabet, m.alphabet.size() > 2 ? 3 : 5)) {
            INFO(word_str(w));
            CHECK(accepts(cm, w, m.policy()).verdict == accepts(cm, w, m.policy(), raw).verdict);
        }
    }
}

TEST_CASE("enumerate examples")
{
    const CompiledEfa up(build_upow());
    const auto e1 = enumerate(up, 9, up.machine().policy());
    CHECK(words_of(e1.accepted) == std::vector<std::string>{"a", "aa", "aaaa", "aaaaaaaa"});
    CHECK(e1.budget_exhausted.empty());

    const CompiledEfa odd(build_odd_power());
    CHECK(words_of(enumerate(odd, 9, odd.machine().policy()).accepted) == std::vector<std::string>{"aa", "aaaaaaaa"});

    const CompiledEfa mult(build_mult());
    const auto e3 = enumerate(mult, 3, mult.machine().policy());
    CHECK(words_of(e3.accepted) ==
          std::vector<std::string>{"ε", "x", "y", "xx", "yy", "xxx", "xyz", "yyy"});
    CHECK(e3.budget_exhausted.empty());

    const CompiledEfa abc(build_anbncn());
    CHECK(words_of(enumerate(abc, 6, abc.machine().policy()).accepted) ==
          std::vector<std::string>{"ε", "abc", "aabbcc"});
}

TEST_CASE("enumerate matches the oracle list")
{
    const auto o = oracle("MULT");
    std::vector<std::string> expected;
    for (const auto& w : all_words({"x", "y", "z"}, 4))
        if (o.contains(w))
            expected.push_back(word_str(w));
    const CompiledEfa m(build_mult());
    CHECK(words_of(enumerate(m, 4, m.machine().policy()).accepted) == expected);
}

TEST_CASE("equiv_check examples")
{
    const CompiledEfa up(build_upow());
    const auto pass = equiv_check(up, lang::upow, {"a"}, 16, up.machine().policy());
    CHECK(pass.passed());
    CHECK(pass.words_checked == 17);
    CHECK(pass.exit_code() == 0);

    const auto fail = equiv_check(up, lang::oddpow, {"a"}, 8, up.machine().policy());
    CHECK(words_of([&] {
              std::vector<Word> ws;
              for (const auto& e : fail.mismatches)
                  ws.push_back(e.word);
              return ws;
          }()) == std::vector<std::string>{"a", "aaaa"});
    CHECK(fail.exit_code() == 1);

    const auto tight = equiv_check(up, lang::upow, {"a"}, 4, BudgetPolicy::constant_depth(1));
    CHECK(tight.exit_code() == 2);
}

TEST_CASE("self-consistency with the enumerated language")
{
    for (const auto& m : {build_upow(), build_composite(), build_anbncn()}) {
        const CompiledEfa cm(m);
        const std::size_t len = m.alphabet.size() > 1 ? 4 : 10;
        const auto e = enumerate(cm, len, m.policy());
        std::set<Word> in(e.accepted.begin(), e.accepted.end());
        CHECK(equiv_check(cm, [&](const Word& w) { return in.count(w) > 0; }, m.alphabet, len, m.policy()).passed());
    }
}

TEST_CASE("results do not depend on the worker count")
{
    const CompiledEfa m(build_multiple());
    const auto one = enumerate(m, 7, m.machine().policy(), 1);
    const auto four = enumerate(m, 7, m.machine().policy(), 4);
    CHECK(one.accepted == four.accepted);
    CHECK(one.budget_exhausted == four.budget_exhausted);
    const auto o = oracle("MULTIPLE");
    const auto r1 = equiv_check(m, o.contains, o.alphabet, 7, m.machine().policy(), 1);
    const auto r4 = equiv_check(m, o.contains, o.alphabet, 7, m.machine().policy(), 4);
    CHECK(r1.mismatches.size() == r4.mismatches.size());
    CHECK(r1.words_checked == r4.words_checked);
}

TEST_CASE("register counts for the identity loop")
{
    const auto t = reachable_register_count(CompiledEfa(identity_loop()), 8, BudgetPolicy::standard());
    REQUIRE(t.at_length.size() == 9);
    for (std::size_t k = 0; k <= 8; ++k) {
        CHECK(t.at_length[k] == 1);
        CHECK(t.up_to_length[k] == 1);
    }
}

TEST_CASE("register counts for the word problem of Z")
{
    const auto t = reachable_register_count(CompiledEfa(build_word_problem_acceptor(GroupSpec::free_abelian(1))), 10,
                                            BudgetPolicy::standard());
    for (std::size_t n = 0; n <= 10; ++n) {
        CHECK(t.up_to_length[n] == 2 * n + 1);
        CHECK(t.at_length[n] == n + 1);
    }
}

TEST_CASE("register counts for the word problem of F2 follow the ball")
{
    const GroupSpec f2 = GroupSpec::free(2);
    const auto t = reachable_register_count(CompiledEfa(build_word_problem_acceptor(f2)), 6, BudgetPolicy::standard());
    // Independent count: reduced words of length <= n over four letters.
    std::size_t ball = 1, sphere = 4;
    for (std::size_t n = 0; n <= 6; ++n) {
        if (n > 0) {
            ball += sphere;
            sphere *= 3;
        }
        CHECK(t.up_to_length[n] == ball);
    }
}

TEST_CASE("word formatting round trips")
{
    CHECK(word_str({}) == "ε");
    CHECK(word_str(parse_word("abc")) == "abc");
    CHECK(word_str(parse_word("a a^-1 b")) == "a a^-1 b");
    CHECK(parse_word("ε").empty());
    CHECK(all_words({"a", "b"}, 3).size() == 15);
}
