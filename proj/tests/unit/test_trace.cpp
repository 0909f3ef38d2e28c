#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "tracemon/errors.hpp"
#include "tracemon/trace.hpp"

using namespace tracemon;

namespace {

TraceAlphabet abd() { return make_alphabet({"a", "b", "d"}, {{"a", "b"}}); }

std::set<Word> words(const TraceAlphabet& alpha, std::initializer_list<const char*> ws)
{
    std::set<Word> out;
    for (const char* w : ws)
        out.insert(alpha.parse_word(w));
    return out;
}

} // namespace

TEST_SUITE("trace_core")
{
    TEST_CASE("alphabet construction and validation")
    {
        const auto alpha = abd();
        CHECK(alpha.size() == 3);
        CHECK(alpha.independent(0, 1));
        CHECK(alpha.independent(1, 0));
        CHECK(alpha.dependent(0, 0));
        CHECK(dependent(alpha, "a", "d"));
        CHECK_FALSE(dependent(alpha, "a", "b"));
        CHECK_THROWS_AS((void)dependent(alpha, "a", "x"), InputError);

        const auto single = make_alphabet({"a"}, {});
        CHECK_FALSE(single.has_independence());

        CHECK_THROWS_WITH_AS(make_alphabet({"a", "b"}, {{"a", "a"}}), doctest::Contains("reflexive"), InputError);
        CHECK_THROWS_AS(make_alphabet({"a", "a"}, {}), InputError);
        CHECK_THROWS_AS(make_alphabet({"a", "b"}, {{"a", "c"}}), InputError);
        CHECK_THROWS_AS(make_alphabet({}, {}), InputError);
    }

    TEST_CASE("alphabet file round trip")
    {
        const auto alpha = parse_alphabet("# comment\nletters: a b d\n\nindependent: b a\n");
        CHECK(alpha == abd());
        CHECK(parse_alphabet(format_alphabet(alpha)) == alpha);
        CHECK_THROWS_AS(parse_alphabet("independent: a b\n"), InputError);
        CHECK_THROWS_AS(parse_alphabet("letters: a b\nindependent: a\n"), InputError);
        CHECK_THROWS_AS(parse_alphabet("letters: a b\nfoo: a b\n"), InputError);
        CHECK(load_alphabet(brute::data_path("abd.alpha")) == alpha);
    }

    TEST_CASE("word parsing")
    {
        const auto alpha = abd();
        CHECK(alpha.parse_word("abd") == Word{0, 1, 2});
        CHECK(alpha.parse_word("a b d") == Word{0, 1, 2});
        CHECK(alpha.parse_word("a,b") == Word{0, 1});
        CHECK(alpha.parse_word("").empty());
        CHECK(alpha.parse_word("-").empty());
        CHECK_THROWS_AS((void)alpha.parse_word("abx"), InputError);
        CHECK(alpha.format_word({0, 2, 1}) == "adb");
    }

    TEST_CASE("maximal D-cliques")
    {
        const auto alpha = abd();
        const auto cliques = maximal_d_cliques(alpha);
        REQUIRE(cliques.size() == 2);
        CHECK(cliques[0] == (letter_bit(0) | letter_bit(2)));
        CHECK(cliques[1] == (letter_bit(1) | letter_bit(2)));
        CHECK(maximal_d_cliques(make_alphabet({"a", "b", "d"}, {})).size() == 1);
        CHECK(maximal_d_cliques(make_alphabet({"a", "b"}, {{"a", "b"}})).size() == 2);
    }

    TEST_CASE("projection")
    {
        const auto alpha = abd();
        const Word w = alpha.parse_word("abdab");
        CHECK(projection(w, letter_bit(0) | letter_bit(2)) == alpha.parse_word("ada"));
        CHECK(projection(w, letter_bit(1) | letter_bit(2)) == alpha.parse_word("bdb"));
        CHECK(projection({}, letter_bit(0)).empty());
    }

    TEST_CASE("equivalence of words")
    {
        const auto alpha = abd();
        CHECK(equivalent(alpha, alpha.parse_word("abdab"), alpha.parse_word("badab")));
        CHECK_FALSE(equivalent(alpha, alpha.parse_word("abdbabd"), alpha.parse_word("adabbbd")));
        CHECK(equivalent(alpha, alpha.parse_word("abd"), alpha.parse_word("abd")));
        CHECK_THROWS_AS(equivalent(alpha, Word{7}, Word{7}), InputError);
    }

    TEST_CASE("trace of a word")
    {
        const auto alpha = abd();
        const FiniteTrace t = trace_of_word(alpha, alpha.parse_word("abdab"));
        REQUIRE(t.size() == 5);
        const auto a1 = *t.find({0, 0}), a2 = *t.find({0, 1});
        const auto b1 = *t.find({1, 0}), b2 = *t.find({1, 1});
        const auto d1 = *t.find({2, 0});
        CHECK_FALSE(t.leq(a1, b1));
        CHECK_FALSE(t.leq(b1, a1));
        CHECK(t.leq(a1, d1));
        CHECK(t.leq(b1, d1));
        CHECK(t.leq(d1, a2));
        CHECK(t.leq(d1, b2));
        CHECK(t.leq(a1, b2));
        const std::vector<std::pair<std::size_t, std::size_t>> hasse{{a1, d1}, {b1, d1}, {d1, a2}, {d1, b2}};
        auto sorted = hasse;
        std::sort(sorted.begin(), sorted.end());
        CHECK(t.covering() == sorted);
        CHECK(t.down(d1) == StateSet{a1, b1, d1});
        CHECK(t.up(d1) == StateSet{d1, a2, b2});

        const FiniteTrace chain = trace_of_word(alpha, alpha.parse_word("aaa"));
        CHECK(chain.covering().size() == 2);
        const FiniteTrace par = trace_of_word(alpha, alpha.parse_word("ab"));
        CHECK(par.covering().empty());
        CHECK(trace_of_word(alpha, alpha.parse_word("abdab")) == trace_of_word(alpha, alpha.parse_word("badba")));
    }

    TEST_CASE("steps between configurations")
    {
        const auto alpha = abd();
        const FiniteTrace t = trace_of_word(alpha, alpha.parse_word("abdab"));
        const auto a1 = *t.find({0, 0});
        auto c = step(t, Configuration{}, 0);
        REQUIRE(c);
        CHECK(c->members() == StateSet{a1});
        CHECK_FALSE(step(t, Configuration{}, 2));
        CHECK_THROWS_AS(step(t, Configuration{StateSet{*t.find({2, 0})}}, 0), InputError);

        const FiniteTrace chain = trace_of_word(alpha, alpha.parse_word("aaa"));
        auto c2 = step(chain, Configuration{StateSet{0}}, 0);
        REQUIRE(c2);
        CHECK(c2->members() == StateSet{0, 1});
    }

    TEST_CASE("run maps")
    {
        const auto alpha = abd();
        const FiniteTrace t = trace_of_word(alpha, alpha.parse_word("abdbabd"));
        CHECK(run_map(t, alpha.parse_word("abdbabd")));
        CHECK_FALSE(run_map(t, alpha.parse_word("adabbbd")));
        CHECK_FALSE(run_map(t, alpha.parse_word("abdbab")));
        const auto empty = run_map(trace_of_word(alpha, {}), {});
        REQUIRE(empty);
        CHECK(empty->size() == 1);
        CHECK(empty->front().size() == 0);
    }

    TEST_CASE("linearizations and equivalence classes")
    {
        const auto alpha = abd();
        const auto expected = words(alpha, {"abdab", "abdba", "badab", "badba"});
        CHECK(linearizations(trace_of_word(alpha, alpha.parse_word("abdab"))) == expected);
        CHECK(equivalence_class(alpha, alpha.parse_word("abdab"), 100) == expected);
        CHECK(linearizations(trace_of_word(alpha, alpha.parse_word("ab"))) == words(alpha, {"ab", "ba"}));
        CHECK(linearizations(trace_of_word(alpha, alpha.parse_word("aa"))) == words(alpha, {"aa"}));
        const auto word_alpha = make_alphabet({"a", "b"}, {});
        CHECK(equivalence_class(word_alpha, word_alpha.parse_word("abba"), 10).size() == 1);
        CHECK_THROWS_AS(linearizations(trace_of_word(alpha, Word(11, 0))), BoundExceeded);
        CHECK_THROWS_AS(equivalence_class(alpha, alpha.parse_word("abababab"), 3), BoundExceeded);
    }

    TEST_CASE("lexicographic normal form")
    {
        const auto alpha = abd();
        CHECK(foata_normal_form(alpha, alpha.parse_word("badab")) == alpha.parse_word("abdab"));
        CHECK(foata_normal_form(alpha, alpha.parse_word("abdab")) == alpha.parse_word("abdab"));
        const auto word_alpha = make_alphabet({"a", "b"}, {});
        CHECK(foata_normal_form(word_alpha, word_alpha.parse_word("ba")) == word_alpha.parse_word("ba"));
    }

    TEST_CASE("three characterizations of equivalence agree")
    {
        std::mt19937 rng(7);
        const std::vector<TraceAlphabet> alphabets{
            abd(), make_alphabet({"a", "b"}, {{"a", "b"}}),
            make_alphabet({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}})};
        for (const auto& alpha : alphabets) {
            for (int round = 0; round < 150; ++round) {
                std::uniform_int_distribution<std::size_t> len(0, 8), letter(0, alpha.size() - 1);
                Word u(len(rng));
                for (auto& x : u)
                    x = letter(rng);
                Word v = u;
                std::shuffle(v.begin(), v.end(), rng);
                if (round % 3 == 0 && !v.empty())
                    v.back() = letter(rng);
                const auto cls = equivalence_class(alpha, u, 50000);
                const bool by_cliques = equivalent(alpha, u, v);
                CHECK(by_cliques == (cls.count(v) == 1));
                CHECK(by_cliques == run_map(trace_of_word(alpha, u), v).has_value());
                CHECK(by_cliques == equivalent(alpha, v, u));
                if (u.size() <= 7) {
                    CHECK(linearizations(trace_of_word(alpha, u)) == cls);
                    CHECK(brute::linearizations(alpha, u) == cls);
                }
                const Word nf = foata_normal_form(alpha, u);
                CHECK(nf == *cls.begin());
                for (const Word& w : cls)
                    CHECK(foata_normal_form(alpha, w) == nf);
            }
        }
    }

    TEST_CASE("trace axioms on random words")
    {
        std::mt19937 rng(11);
        const auto alpha = make_alphabet({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"a", "d"}});
        for (int round = 0; round < 100; ++round) {
            std::uniform_int_distribution<std::size_t> len(0, 9), letter(0, 3);
            Word u(len(rng));
            for (auto& x : u)
                x = letter(rng);
            const FiniteTrace t = trace_of_word(alpha, u);
            for (auto [e, f] : t.covering())
                CHECK(alpha.dependent(t.label(e), t.label(f)));
            for (std::size_t e = 0; e < t.size(); ++e)
                for (std::size_t f = 0; f < t.size(); ++f)
                    if (alpha.dependent(t.label(e), t.label(f)))
                        CHECK((t.leq(e, f) || t.leq(f, e)));
            // Steps are deterministic: at most one successor per letter.
            const auto run = run_map(t, u);
            REQUIRE(run);
            for (const auto& c : *run)
                for (Letter a = 0; a < alpha.size(); ++a)
                    if (auto next = step(t, c, a))
                        CHECK(next->size() == c.size() + 1);
        }
    }
}
