#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "brute.hpp"
#include "tracemon/cli.hpp"
#include "tracemon/monitor.hpp"

using namespace tracemon;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "")
{
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() / ("tracemon-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = "") const
    {
        const fs::path p = path_ / name;
        if (!content.empty()) {
            std::ofstream out(p);
            out << content;
        }
        return p.string();
    }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

const std::string ab = brute::data_path("ab.alpha");
const std::string ab_indep = brute::data_path("ab_indep.alpha");
const std::string abd = brute::data_path("abd.alpha");

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("compile writes a monitor and reports statistics")
    {
        TempDir dir;
        const std::string mon = dir.file("fb.mon");
        const Result r = run({"compile", "-a", ab, "-f", "F <b>tt", "-o", mon});
        CHECK(r.code == cli::ok);
        CHECK(r.err.find("fsm=2") != std::string::npos);
        CHECK(r.err.find("until_depth=1") != std::string::npos);
        const Monitor m = deserialize(slurp(mon));
        CHECK(m.machine.num_states() == 2);

        const Result to_stdout = run({"compile", "-a", ab, "-f", "F <b>tt"});
        CHECK(to_stdout.out == slurp(mon));

        const std::string formula_file = dir.file("f.ltrl", "F <b>tt\n");
        CHECK(run({"compile", "-a", ab, "--formula-file", formula_file}).out == to_stdout.out);
    }

    TEST_CASE("compile input errors")
    {
        const Result r = run({"compile", "-a", ab, "-f", "<c>tt"});
        CHECK(r.code == cli::input_error);
        CHECK(r.err.find("unknown letter c") != std::string::npos);
        CHECK(run({"compile", "-a", ab, "-f", "<a"}).code == cli::input_error);
        CHECK(run({"compile", "-a", "/nonexistent.alpha", "-f", "tt"}).code == cli::input_error);
        CHECK(run({"compile", "-a", ab}).code == cli::input_error);
        CHECK(run({"compile", "-a", ab, "-f", "tt", "-b", "fancy"}).code == cli::input_error);
        CHECK(run({"frobnicate"}).code == cli::input_error);
        CHECK(run({}).code == cli::input_error);
    }

    TEST_CASE("compile respects the state budget")
    {
        ::setenv("TRACEMON_STATE_BUDGET", "3", 1);
        const Result r = run({"compile", "-a", abd, "-f", "F (<a>tt & F (<b>tt & F <d>tt))"});
        ::unsetenv("TRACEMON_STATE_BUDGET");
        CHECK(r.code == cli::budget_exhausted);
        CHECK(r.err.find("budget") != std::string::npos);
    }

    TEST_CASE("run streams verdicts")
    {
        TempDir dir;
        const std::string mon = dir.file("fb.mon");
        REQUIRE(run({"compile", "-a", ab, "-f", "F <b>tt", "-o", mon}).code == cli::ok);

        CHECK(run({"run", "-m", mon}, "b\n").out == "unknown\ntop\n");
        CHECK(run({"run", "-m", mon}, "").out == "unknown\n");
        CHECK(run({"run", "-m", mon}, "a\n\n  \na\n").out == "unknown\nunknown\nunknown\n");

        const Result bad = run({"run", "-m", mon}, "a\nx\n");
        CHECK(bad.code == cli::input_error);
        CHECK(bad.out == "unknown\nunknown\n");
        CHECK(bad.err.find("line 2: unknown letter x") != std::string::npos);
        CHECK(run({"run", "-m", mon}, "a b\n").err.find("line 1:") != std::string::npos);

        const Result stop = run({"run", "-m", mon, "--stop-on-final"}, "a\nb\na\n");
        CHECK(stop.code == cli::final_verdict);
        CHECK(stop.out == "unknown\nunknown\ntop\n");

        const std::string events = dir.file("events.txt", "a\nb\n");
        CHECK(run({"run", "-m", mon, "-e", events}).out == "unknown\nunknown\ntop\n");

        const std::string broken = dir.file("broken.mon", "monitor v1\nletters: a\n");
        CHECK(run({"run", "-m", broken}).code == cli::input_error);
    }

    TEST_CASE("equiv")
    {
        const Result yes = run({"equiv", "-a", abd, "abdab", "badab"});
        CHECK(yes.code == cli::ok);
        CHECK(yes.out == "equivalent\n");
        const Result no = run({"equiv", "-a", abd, "abdbabd", "adabbbd"});
        CHECK(no.code == cli::inequivalent);
        CHECK(no.out == "inequivalent\nwitness clique {b,d}: bdbbd vs dbbbd\n");
        CHECK(run({"equiv", "-a", abd, "abd", "abd"}).code == cli::ok);
        CHECK(run({"equiv", "-a", abd, "abx", "abd"}).code == cli::input_error);
    }

    TEST_CASE("check")
    {
        const Result good = run({"check", "-a", ab_indep, "-f", "<a>tt", "--max-len", "5"});
        CHECK(good.code == cli::ok);
        CHECK(good.out.find("verdict-invariance") != std::string::npos);
        CHECK(good.out.find("horizon=12") != std::string::npos);

        const Result bad = run({"check", "-a", ab_indep, "-f", "<a>tt", "-b", "word", "--max-len", "4"});
        CHECK(bad.code == cli::checks_failed);
        CHECK(bad.out.find("ab") != std::string::npos);
        CHECK(bad.out.find("ba") != std::string::npos);

        CHECK(run({"check", "-a", ab, "-f", "F <b>tt", "--max-len", "4"}).code == cli::ok);
    }

    TEST_CASE("export")
    {
        TempDir dir;
        const std::string mon = dir.file("fb.mon");
        REQUIRE(run({"compile", "-a", ab, "-f", "F <b>tt", "-o", mon}).code == cli::ok);
        const Result fsm = run({"export", "-m", mon, "-s", "fsm"});
        CHECK(fsm.code == cli::ok);
        CHECK(fsm.out.find("q0 / ?") != std::string::npos);
        CHECK(fsm.out.find("q1 / ⊤") != std::string::npos);
        CHECK(run({"export", "-a", ab, "-f", "F <b>tt", "-s", "fsm"}).out == fsm.out);

        for (const char* stage : {"nba-pos", "nba-neg", "nfa-pos", "nfa-neg", "dfa-pos", "dfa-neg"}) {
            const Result r = run({"export", "-a", ab, "-f", "F <b>tt", "-s", stage});
            CHECK(r.code == cli::ok);
            CHECK(r.out.rfind("digraph", 0) == 0);
        }
        const Result empty = run({"export", "-a", ab, "-f", "!tt", "-s", "dfa-pos"});
        CHECK(empty.code == cli::ok);
        CHECK(empty.out.find("q0 -> q0") != std::string::npos);

        CHECK(run({"export", "-a", ab, "-f", "F <b>tt", "-s", "xyz"}).code == cli::input_error);
        CHECK(run({"export", "-m", mon, "-s", "nba-pos"}).code == cli::input_error);

        const std::string dot = dir.file("fb.dot");
        CHECK(run({"export", "-m", mon, "-s", "fsm", "-o", dot}).code == cli::ok);
        CHECK(slurp(dot) == fsm.out);
    }

    TEST_CASE("eval")
    {
        const Result r = run({"eval", "-a", abd, "-f", "!<a><d>tt U <d>tt", "--prefix", "ab", "--period", "d"});
        CHECK(r.code == cli::ok);
        CHECK(r.out == "false horizon=12\n");
        CHECK(run({"eval", "-a", ab_indep, "-f", "<a>tt", "--prefix", "b", "--period", "a", "--horizon", "8"}).out ==
              "true horizon=8\n");
        CHECK(run({"eval", "-a", ab_indep, "-f", "<a>tt", "--period", "-"}).code == cli::input_error);
    }

    TEST_CASE("outputs are deterministic and round-trip")
    {
        TempDir dir;
        for (const auto& text : brute::load_corpus()) {
            const std::string m1 = dir.file("m1.mon"), m2 = dir.file("m2.mon");
            REQUIRE(run({"compile", "-a", abd, "-f", text, "-o", m1}).code == cli::ok);
            REQUIRE(run({"compile", "-a", abd, "-f", text, "-o", m2}).code == cli::ok);
            CHECK(slurp(m1) == slurp(m2));
            CHECK(run({"export", "-m", m1, "-s", "fsm"}).out == run({"export", "-m", m2, "-s", "fsm"}).out);

            const Monitor loaded = deserialize(slurp(m1));
            const Monitor direct = build_monitor(parse_formula(text), load_alphabet(abd), Backend::Trace);
            for (const Word& u : brute::words_up_to(3, 6))
                CHECK(verdict_at(loaded, u) == verdict_at(direct, u));
        }
    }
}
