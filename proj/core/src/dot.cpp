#include "tracemon/dot.hpp"

#include <sstream>

namespace tracemon {

namespace {

std::string quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

void header(std::ostringstream& os, const char* name)
{
    os << "digraph " << name << " {\n  rankdir=LR;\n  node [shape=circle];\n";
}

void start_arrows(std::ostringstream& os, const std::vector<State>& initial)
{
    for (State q : initial) {
        os << "  init" << q << " [shape=point];\n";
        os << "  init" << q << " -> q" << q << ";\n";
    }
}

std::string nondet_dot(const NondetAutomaton& a, const char* name)
{
    std::ostringstream os;
    header(os, name);
    for (State q = 0; q < a.num_states(); ++q)
        os << "  q" << q << " [label=\"q" << q << "\"" << (a.accepting[q] ? ", shape=doublecircle" : "") << "];\n";
    start_arrows(os, a.initial);
    for (State q = 0; q < a.num_states(); ++q)
        for (Letter l = 0; l < a.num_letters(); ++l)
            for (State r : a.delta[q][l])
                os << "  q" << q << " -> q" << r << " [label=" << quote(a.letters[l]) << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace

std::string to_dot(const Nba& a) { return nondet_dot(a, "nba"); }

std::string to_dot(const Nfa& a) { return nondet_dot(a, "nfa"); }

std::string to_dot(const Dfa& a)
{
    std::ostringstream os;
    header(os, "dfa");
    for (State q = 0; q < a.num_states(); ++q)
        os << "  q" << q << " [label=\"q" << q << "\"" << (a.accepting[q] ? ", shape=doublecircle" : "") << "];\n";
    if (a.num_states() > 0)
        start_arrows(os, {a.initial});
    for (State q = 0; q < a.num_states(); ++q)
        for (Letter l = 0; l < a.letters.size(); ++l)
            os << "  q" << q << " -> q" << a.delta[q][l] << " [label=" << quote(a.letters[l]) << "];\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const Aba& a)
{
    std::ostringstream os;
    header(os, "aba");
    for (State q = 0; q < a.num_states(); ++q)
        os << "  q" << q << " [label=\"q" << q << "\"" << (a.accepting[q] ? ", shape=doublecircle" : "") << "];\n";
    os << "  init [shape=plaintext, label=" << quote(a.initial.str()) << "];\n";
    for (State q = 0; q < a.num_states(); ++q)
        for (Letter l = 0; l < a.letters.size(); ++l) {
            const PosBool& f = a.delta[q][l];
            if (f.kind() == PosBool::Kind::False)
                continue;
            os << "  t" << q << "_" << l << " [shape=box, label=" << quote(f.str()) << "];\n";
            os << "  q" << q << " -> t" << q << "_" << l << " [label=" << quote(a.letters[l]) << "];\n";
        }
    os << "}\n";
    return os.str();
}

std::string to_dot(const MooreMachine& m)
{
    std::ostringstream os;
    header(os, "monitor");
    for (State q = 0; q < m.num_states(); ++q)
        os << "  q" << q << " [label=" << quote("q" + std::to_string(q) + " / " + std::string(to_symbol(m.output[q])))
           << "];\n";
    if (m.num_states() > 0)
        start_arrows(os, {m.initial});
    for (State q = 0; q < m.num_states(); ++q)
        for (Letter l = 0; l < m.letters.size(); ++l)
            os << "  q" << q << " -> q" << m.delta[q][l] << " [label=" << quote(m.letters[l]) << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace tracemon
