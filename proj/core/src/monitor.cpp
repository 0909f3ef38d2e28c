#include "tracemon/monitor.hpp"

#include "tracemon/errors.hpp"

namespace tracemon {

Pipeline build_pipeline(const Formula& f, const TraceAlphabet& alpha, Backend backend,
                        const TranslationOptions& opts)
{
    Pipeline p;
    auto [pos, neg] = translate_both(f, alpha, backend, opts);
    p.nba_pos = std::move(pos);
    p.nba_neg = std::move(neg);
    p.nonempty_pos = per_state_nonempty(p.nba_pos);
    p.nonempty_neg = per_state_nonempty(p.nba_neg);
    p.nfa_pos = to_finite_acceptor(p.nba_pos, p.nonempty_pos);
    p.nfa_neg = to_finite_acceptor(p.nba_neg, p.nonempty_neg);
    p.dfa_pos = determinize(p.nfa_pos, opts.state_budget);
    p.dfa_neg = determinize(p.nfa_neg, opts.state_budget);
    p.product = product_moore(p.dfa_pos, p.dfa_neg);
    p.fsm = minimize_moore(p.product);

    auto& s = p.stats;
    s.formula_size = f.size();
    s.until_depth = until_nesting_depth(f);
    s.nba_pos = p.nba_pos.num_states();
    s.nba_neg = p.nba_neg.num_states();
    s.nfa_pos = p.nfa_pos.num_states();
    s.nfa_neg = p.nfa_neg.num_states();
    s.dfa_pos = p.dfa_pos.num_states();
    s.dfa_neg = p.dfa_neg.num_states();
    s.product = p.product.num_states();
    s.fsm = p.fsm.num_states();
    return p;
}

bool has_final_sinks(const MooreMachine& m)
{
    for (State q = 0; q < m.num_states(); ++q) {
        if (m.output[q] == Verdict::Unknown)
            continue;
        for (State r : m.delta[q])
            if (m.output[r] != m.output[q])
                return false;
    }
    return true;
}

Monitor make_monitor(const Pipeline& p, const Formula& f, Backend backend)
{
    if (!has_final_sinks(p.fsm))
        throw IntegrityError("monitor leaves a final verdict for formula " + render(f));
    return Monitor{p.fsm, render(f), backend, p.stats};
}

Monitor build_monitor(const Formula& f, const TraceAlphabet& alpha, Backend backend, const TranslationOptions& opts)
{
    return make_monitor(build_pipeline(f, alpha, backend, opts), f, backend);
}

Letter Monitor::letter_index(std::string_view name) const
{
    for (Letter a = 0; a < machine.letters.size(); ++a)
        if (machine.letters[a] == name)
            return a;
    throw InputError("unknown letter " + std::string(name));
}

namespace {

void check_word(const Monitor& m, const Word& u)
{
    for (Letter a : u)
        if (a >= m.letters().size())
            throw InputError("unknown letter index " + std::to_string(a));
}

} // namespace

Verdict verdict_at(const Monitor& m, const Word& u)
{
    check_word(m, u);
    return m.machine.output_after(u);
}

VerdictTrace run_word(const Monitor& m, const Word& u)
{
    check_word(m, u);
    VerdictTrace t;
    State q = m.machine.initial;
    t.initial = m.machine.output[q];
    for (Letter a : u) {
        q = m.machine.delta[q][a];
        t.steps.emplace_back(a, m.machine.output[q]);
    }
    return t;
}

Verdict MonitorSession::step(Letter a)
{
    if (a >= monitor_->letters().size())
        throw InputError("unknown letter index " + std::to_string(a));
    state_ = monitor_->machine.delta[state_][a];
    return verdict();
}

Verdict MonitorSession::step(std::string_view letter)
{
    return step(monitor_->letter_index(letter));
}

std::optional<Word> verdict_invariance_check(const Monitor& m, const TraceAlphabet& alpha, const Word& u,
                                             std::size_t bound)
{
    const Verdict expected = verdict_at(m, u);
    for (const Word& v : equivalence_class(alpha, u, bound))
        if (verdict_at(m, v) != expected)
            return v;
    return std::nullopt;
}

} // namespace tracemon
