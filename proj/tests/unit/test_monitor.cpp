#include <doctest.h>

#include "brute.hpp"
#include "tracemon/errors.hpp"
#include "tracemon/monitor.hpp"

using namespace tracemon;

namespace {

TraceAlphabet words_ab() { return make_alphabet({"a", "b"}, {}); }
TraceAlphabet indep_ab() { return make_alphabet({"a", "b"}, {{"a", "b"}}); }
TraceAlphabet abd() { return make_alphabet({"a", "b", "d"}, {{"a", "b"}}); }

Monitor build(const char* text, const TraceAlphabet& alpha, Backend b = Backend::Trace)
{
    return build_monitor(parse_formula(text), alpha, b);
}

Verdict at(const Monitor& m, const TraceAlphabet& alpha, const char* w) { return verdict_at(m, alpha.parse_word(w)); }

constexpr Verdict T = Verdict::Top, U = Verdict::Unknown, B = Verdict::Bottom;

} // namespace

TEST_SUITE("monitor")
{
    TEST_CASE("eventually b without independence")
    {
        const auto alpha = words_ab();
        const Monitor m = build("F <b>tt", alpha);
        CHECK(m.machine.num_states() == 2);
        CHECK(at(m, alpha, "") == U);
        CHECK(at(m, alpha, "aaa") == U);
        CHECK(at(m, alpha, "aab") == T);
        CHECK(at(m, alpha, "aaba") == T);
        CHECK(m.formula == "(tt U <b>tt)");
        CHECK(m.backend == Backend::Trace);
        CHECK(m.stats.fsm == 2);
        CHECK(m.stats.until_depth == 1);
        CHECK(m.stats.formula_size == 4);
    }

    TEST_CASE("never a without independence")
    {
        const auto alpha = words_ab();
        const Monitor m = build("G !<a>tt", alpha);
        CHECK(m.machine.num_states() == 2);
        CHECK(at(m, alpha, "bbb") == U);
        CHECK(at(m, alpha, "ba") == B);
        CHECK(at(m, alpha, "bab") == B);
    }

    TEST_CASE("next a with and without independence")
    {
        const auto indep = indep_ab();
        const Monitor m = build("<a>tt", indep);
        CHECK(at(m, indep, "b") == U);
        CHECK(at(m, indep, "a") == T);
        CHECK(at(m, indep, "bbbb") == U);
        CHECK(at(m, indep, "ba") == T);

        const auto words = words_ab();
        const Monitor w = build("<a>tt", words);
        CHECK(at(w, words, "b") == B);
        CHECK(at(w, words, "a") == T);

        const Monitor sync = build("<a>tt", abd());
        CHECK(at(sync, abd(), "b") == U);
        CHECK(at(sync, abd(), "d") == B);
        CHECK(at(sync, abd(), "bd") == B);
    }

    TEST_CASE("decided formulas")
    {
        const auto alpha = indep_ab();
        const Monitor never = build("!tt", alpha);
        CHECK(never.machine.num_states() == 1);
        CHECK(at(never, alpha, "") == B);
        const Monitor always = build("tt", alpha);
        CHECK(at(always, alpha, "ab") == T);
    }

    TEST_CASE("verdict traces and letters")
    {
        const auto alpha = words_ab();
        const Monitor m = build("F <b>tt", alpha);
        const VerdictTrace t = run_word(m, alpha.parse_word("aba"));
        CHECK(t.initial == U);
        REQUIRE(t.steps.size() == 3);
        CHECK(t.steps[0] == std::pair<Letter, Verdict>{0, U});
        CHECK(t.steps[1] == std::pair<Letter, Verdict>{1, T});
        CHECK(t.steps[2] == std::pair<Letter, Verdict>{0, T});
        CHECK(m.letter_index("b") == 1);
        CHECK_THROWS_AS((void)m.letter_index("c"), InputError);
        CHECK_THROWS_AS(verdict_at(m, Word{5}), InputError);
    }

    TEST_CASE("streaming sessions")
    {
        const auto indep = indep_ab();
        const Monitor m = build("<a>tt", indep);
        MonitorSession s(m);
        CHECK(s.verdict() == U);
        CHECK(s.step("b") == U);
        CHECK(s.step("a") == T);
        CHECK(s.step("b") == T);
        const State before = s.state();
        CHECK_THROWS_AS(s.step("x"), InputError);
        CHECK_THROWS_AS(s.step(Letter{9}), InputError);
        CHECK(s.state() == before);
        s.reset();
        CHECK(s.verdict() == U);

        const auto words = words_ab();
        const Monitor fb = build("F <b>tt", words);
        MonitorSession other(fb);
        for (int i = 0; i < 3; ++i)
            CHECK(other.step("a") == U);

        const Monitor ga = build("G !<a>tt", words);
        MonitorSession g(ga);
        CHECK(g.step("a") == B);
        for (const char* l : {"a", "b", "b", "a"})
            CHECK(g.step(l) == B);
    }

    TEST_CASE("verdict invariance check")
    {
        const auto indep = indep_ab();
        const Monitor ab = build("<a><b>tt", indep);
        CHECK_FALSE(verdict_invariance_check(ab, indep, indep.parse_word("ab"), 10));

        const Monitor word_next = build("<a>tt", indep, Backend::Word);
        const auto cex = verdict_invariance_check(word_next, indep, indep.parse_word("ab"), 10);
        REQUIRE(cex);
        CHECK(*cex == indep.parse_word("ba"));

        const auto words = words_ab();
        const Monitor w = build("<a>tt", words, Backend::Word);
        for (const Word& u : brute::words_up_to(2, 5))
            CHECK_FALSE(verdict_invariance_check(w, words, u, 10));

        CHECK_THROWS_AS(verdict_invariance_check(ab, indep, indep.parse_word("abababab"), 5), BoundExceeded);
    }

    TEST_CASE("monitor outputs follow the finite-acceptor rule")
    {
        for (const auto& alpha : {indep_ab(), abd()}) {
            const auto words = brute::words_up_to(alpha.size(), alpha.size() == 2 ? 6 : 5);
            for (const auto& text : brute::load_corpus()) {
                const auto f = parse_formula(text);
                const Pipeline p = build_pipeline(f, alpha, Backend::Trace);
                const Monitor m = make_monitor(p, f, Backend::Trace);
                CHECK(has_final_sinks(m.machine));
                CHECK(brute::all_states_distinguishable(m.machine));
                for (const Word& u : words) {
                    const bool pos = brute::nfa_accepts(p.nfa_pos, u), neg = brute::nfa_accepts(p.nfa_neg, u);
                    REQUIRE((pos || neg));
                    const Verdict expected = !neg ? T : !pos ? B : U;
                    INFO(text, " ", alpha.format_word(u));
                    CHECK(verdict_at(m, u) == expected);
                }
            }
        }
    }

    TEST_CASE("equivalent words leave the same future")
    {
        // Equivalent words may reach different subsets of the trace automaton,
        // but those subsets accept the same continuations and the monitor
        // cannot tell them apart.
        const auto alpha = abd();
        const auto continuations = brute::words_up_to(3, 4);
        for (const auto& text : {"F <b>tt", "<a>tt U <b>tt", "G (!<a>tt | F <d>tt)", "<a><d>tt"}) {
            const auto f = parse_formula(text);
            const Pipeline p = build_pipeline(f, alpha, Backend::Trace);
            const Monitor m = make_monitor(p, f, Backend::Trace);
            for (const Word& u : brute::words_up_to(3, 5))
                for (const Word& v : equivalence_class(alpha, u, 1000)) {
                    CHECK(m.machine.run(u) == m.machine.run(v));
                    for (const Dfa* d : {&p.dfa_pos, &p.dfa_neg}) {
                        const State su = d->run(u), sv = d->run(v);
                        if (su == sv)
                            continue;
                        for (const Word& w : continuations) {
                            Word uw = u, vw = v;
                            uw.insert(uw.end(), w.begin(), w.end());
                            vw.insert(vw.end(), w.begin(), w.end());
                            CHECK(d->accepts(uw) == d->accepts(vw));
                        }
                    }
                }
        }
    }

    TEST_CASE("bottom exactly when no reached state has a future")
    {
        for (const auto& alpha : {indep_ab(), abd()})
            for (const auto& text : brute::load_corpus()) {
                const auto f = parse_formula(text);
                const Pipeline p = build_pipeline(f, alpha, Backend::Trace);
                const Monitor m = make_monitor(p, f, Backend::Trace);
                for (const Word& u : brute::words_up_to(alpha.size(), 4)) {
                    StateSet reached = StateSet::from(p.nba_pos.initial);
                    for (Letter a : u)
                        reached = p.nba_pos.post(reached, a);
                    bool any = false;
                    reached.for_each([&](std::size_t q) { any = any || p.nonempty_pos[q]; });
                    CHECK((verdict_at(m, u) == B) == !any);
                }
            }
    }

    TEST_CASE("pipeline statistics")
    {
        const Pipeline p = build_pipeline(parse_formula("F <b>tt"), words_ab(), Backend::Word);
        CHECK(p.stats.nba_pos == p.nba_pos.num_states());
        CHECK(p.stats.nfa_neg == p.nfa_neg.num_states());
        CHECK(p.stats.dfa_pos == p.dfa_pos.num_states());
        CHECK(p.stats.product == p.product.num_states());
        CHECK(p.stats.fsm == 2);
        CHECK(has_final_sinks(p.fsm));
    }

    TEST_CASE("sink check")
    {
        MooreMachine bad;
        bad.letters = {"a"};
        bad.delta = {{1}, {0}};
        bad.output = {T, U};
        CHECK_FALSE(has_final_sinks(bad));
        bad.output = {U, T};
        CHECK_FALSE(has_final_sinks(bad));
        bad.delta = {{1}, {1}};
        CHECK(has_final_sinks(bad));
    }

    TEST_CASE("serialization")
    {
        const auto alpha = words_ab();
        const Monitor m = build("F <b>tt", alpha);
        const std::string text = serialize(m);
        CHECK(text == "monitor v1\n"
                      "letters: a b\n"
                      "states: 2\n"
                      "initial: 0\n"
                      "state 0 output unknown\n"
                      "state 1 output top\n"
                      "trans 0 a 0\n"
                      "trans 0 b 1\n"
                      "trans 1 a 1\n"
                      "trans 1 b 1\n");
        const Monitor back = deserialize(text);
        CHECK(moore_isomorphic(back.machine, m.machine));
        CHECK(serialize(back) == text);
        CHECK(back.formula.empty());

        for (const auto& text2 : brute::load_corpus()) {
            const Monitor c = build(text2.c_str(), abd());
            const Monitor loaded = deserialize(serialize(c));
            for (const Word& u : brute::words_up_to(3, 5))
                CHECK(verdict_at(loaded, u) == verdict_at(c, u));
        }
    }

    TEST_CASE("malformed monitor files")
    {
        auto fails_at = [](const std::string& text, const char* needle) {
            try {
                (void)deserialize(text);
            } catch (const InputError& e) {
                return std::string(e.what()).find(needle) != std::string::npos;
            }
            return false;
        };
        const std::string head = "monitor v1\nletters: a\nstates: 1\ninitial: 0\n";
        CHECK(fails_at("", "monitor v1"));
        CHECK(fails_at("monitor v2\n", "line 1"));
        CHECK(fails_at("monitor v1\nletters:\n", "line 2"));
        CHECK(fails_at(head + "state 0 output maybe\n", "line 5"));
        CHECK(fails_at(head + "state 0 output top\ntrans 0 a 3\n", "line 6"));
        CHECK(fails_at(head + "state 0 output top\ntrans 0 z 0\n", "line 6"));
        CHECK(fails_at(head + "state 0 output top\n", "not total"));
        CHECK(fails_at("monitor v1\nletters: a\nstates: 1\ninitial: 4\nstate 0 output top\ntrans 0 a 0\n", "line 4"));
        CHECK_NOTHROW(deserialize(head + "state 0 output top\ntrans 0 a 0\n"));
    }

    TEST_CASE("minimized monitors are canonical")
    {
        for (const auto& text : brute::load_corpus()) {
            const Monitor m = build(text.c_str(), abd());
            CHECK(moore_isomorphic(minimize_moore(m.machine), m.machine));
            CHECK(serialize(build(text.c_str(), abd())) == serialize(m));
        }
    }
}
