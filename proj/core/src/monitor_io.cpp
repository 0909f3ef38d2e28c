#include <sstream>

#include "tracemon/errors.hpp"
#include "tracemon/monitor.hpp"

namespace tracemon {

std::string serialize(const Monitor& m)
{
    const MooreMachine& fsm = m.machine;
    std::ostringstream os;
    os << "monitor v1\n";
    os << "letters:";
    for (const auto& l : fsm.letters)
        os << ' ' << l;
    os << "\nstates: " << fsm.num_states() << "\ninitial: " << fsm.initial << '\n';
    for (State q = 0; q < fsm.num_states(); ++q)
        os << "state " << q << " output " << to_token(fsm.output[q]) << '\n';
    for (State q = 0; q < fsm.num_states(); ++q)
        for (Letter a = 0; a < fsm.letters.size(); ++a)
            os << "trans " << q << ' ' << fsm.letters[a] << ' ' << fsm.delta[q][a] << '\n';
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;)
        out.push_back(tok);
    return out;
}

class Reader {
public:
    explicit Reader(std::string_view text) : in_(std::string(text)) {}

    /// Next non-blank line split into tokens; empty at end of input.
    std::vector<std::string> next()
    {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            auto toks = split(line);
            if (!toks.empty())
                return toks;
        }
        return {};
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("monitor file line " + std::to_string(line_no_) + ": " + what);
    }

    std::size_t number(const std::string& tok, std::size_t limit) const
    {
        std::size_t pos = 0;
        std::size_t v = 0;
        try {
            v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
            fail("expected a number, got '" + tok + "'");
        }
        if (pos != tok.size() || tok.front() == '-')
            fail("expected a number, got '" + tok + "'");
        if (v >= limit)
            fail("state " + tok + " out of range");
        return v;
    }

private:
    std::istringstream in_;
    std::size_t line_no_ = 0;
};

} // namespace

Monitor deserialize(std::string_view text)
{
    Reader r(text);
    auto toks = r.next();
    if (toks != std::vector<std::string>{"monitor", "v1"})
        r.fail("expected header 'monitor v1'");

    MooreMachine m;
    toks = r.next();
    if (toks.empty() || toks[0] != "letters:" || toks.size() < 2)
        r.fail("expected 'letters:' with at least one letter");
    m.letters.assign(toks.begin() + 1, toks.end());
    for (std::size_t i = 0; i < m.letters.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m.letters[i] == m.letters[j])
                r.fail("duplicate letter " + m.letters[i]);

    toks = r.next();
    if (toks.size() != 2 || toks[0] != "states:")
        r.fail("expected 'states: N'");
    const std::size_t n = r.number(toks[1], static_cast<std::size_t>(-1));
    if (n == 0)
        r.fail("a monitor needs at least one state");

    toks = r.next();
    if (toks.size() != 2 || toks[0] != "initial:")
        r.fail("expected 'initial: i'");
    m.initial = r.number(toks[1], n);

    std::vector<bool> seen_output(n, false);
    std::vector<std::vector<bool>> seen_trans(n, std::vector<bool>(m.letters.size(), false));
    m.output.assign(n, Verdict::Unknown);
    m.delta.assign(n, std::vector<State>(m.letters.size(), 0));
    std::size_t outputs = 0, transitions = 0;
    for (toks = r.next(); !toks.empty(); toks = r.next()) {
        if (toks[0] == "state") {
            if (toks.size() != 4 || toks[2] != "output")
                r.fail("expected 'state i output v'");
            const State q = r.number(toks[1], n);
            const auto v = verdict_from_token(toks[3]);
            if (!v)
                r.fail("unknown verdict '" + toks[3] + "'");
            if (seen_output[q])
                r.fail("duplicate output for state " + toks[1]);
            seen_output[q] = true;
            m.output[q] = *v;
            ++outputs;
        } else if (toks[0] == "trans") {
            if (toks.size() != 4)
                r.fail("expected 'trans i a j'");
            const State q = r.number(toks[1], n);
            const State t = r.number(toks[3], n);
            Letter a = 0;
            while (a < m.letters.size() && m.letters[a] != toks[2])
                ++a;
            if (a == m.letters.size())
                r.fail("unknown letter " + toks[2]);
            if (seen_trans[q][a])
                r.fail("duplicate transition");
            seen_trans[q][a] = true;
            m.delta[q][a] = t;
            ++transitions;
        } else {
            r.fail("unexpected '" + toks[0] + "'");
        }
    }
    if (outputs != n)
        throw InputError("monitor file: every state needs an output");
    if (transitions != n * m.letters.size())
        throw InputError("monitor file: transition function is not total");

    Monitor mon;
    mon.machine = std::move(m);
    mon.stats.fsm = n;
    return mon;
}

} // namespace tracemon
