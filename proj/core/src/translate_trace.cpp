// Trace-aware translation of LTrL into Büchi automata.
//
// Every subformula is compiled into a pair of automata, one for the formula
// and one for its negation, each accepting exactly the linearizations of the
// infinite traces that satisfy it. Negation swaps the pair, so no Büchi
// complementation is ever needed.
//
// Satisfaction at a configuration P only depends on the residue trace, and a
// linearization of the residue is obtained by deleting P's events from the
// word. The until automata therefore guess, letter by letter, which events
// belong to the configuration P (marked) and which go to the residue, keeping
// a subset-construction view of the operand automata on the residue. A marked
// letter must not depend on an earlier residue letter, which keeps P
// downward closed. Inner configurations Q ⊆ P are tracked the same way.
//
//   φ U ψ   : an existential choice of P, with universally quantified Q ⊊ P.
//             The open tracker is non-accepting, so P is finite; closing it
//             hands the residue to ψ and to φ for every strict Q.
//   ¬(φ U ψ): a single accepting tracker following all P candidates at once.
//             Whenever P gains an event it may be complete, and then ¬ψ must
//             hold on its residue or ¬φ on the residue of some strict Q ⊊ P.
//
// Both are alternating Büchi automata whose leaves are the operand
// automata; the breakpoint construction turns them back into NBAs.

#include <map>
#include <string>

#include "tracemon/errors.hpp"
#include "tracemon/translate.hpp"

namespace tracemon {

namespace {

struct AutomataPair {
    Nba pos;
    Nba neg;
};

/// Configuration Q ⊆ P seen through the subset of operand states reached on
/// its residue; `blocked` holds letters that may no longer join Q.
struct InnerView {
    StateSet states;
    LetterMask blocked = 0;
    bool strict = false; ///< Q ≠ P
    friend auto operator<=>(const InnerView&, const InnerView&) = default;
};

struct OuterView {
    StateSet states;
    LetterMask blocked = 0;
    std::vector<InnerView> inner;
    friend auto operator<=>(const OuterView&, const OuterView&) = default;
};

template <class T>
void sort_unique(std::vector<T>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool mask_subset(LetterMask x, LetterMask y) { return (x & ~y) == 0; }

/// Keeps only the hardest elements of a conjunction of inner obligations.
void prune_universal(std::vector<InnerView>& v)
{
    sort_unique(v);
    std::vector<InnerView> kept;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < v.size() && !redundant; ++j)
            redundant = j != i && v[j].states.is_subset_of(v[i].states) && mask_subset(v[j].blocked, v[i].blocked) &&
                        v[j].strict >= v[i].strict;
        if (!redundant)
            kept.push_back(v[i]);
    }
    v = std::move(kept);
}

bool dominates_existential(const InnerView& x, const InnerView& y)
{
    return y.states.is_subset_of(x.states) && mask_subset(x.blocked, y.blocked) && x.strict >= y.strict;
}

/// Keeps only the easiest elements of a disjunction of inner witnesses.
void prune_existential(std::vector<InnerView>& v)
{
    sort_unique(v);
    std::vector<InnerView> kept;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < v.size() && !redundant; ++j)
            redundant = j != i && dominates_existential(v[j], v[i]);
        if (!redundant)
            kept.push_back(v[i]);
    }
    v = std::move(kept);
}

/// x imposes at least every obligation y imposes (universal P candidates).
bool outer_harder(const OuterView& x, const OuterView& y)
{
    if (!x.states.is_subset_of(y.states) || !mask_subset(x.blocked, y.blocked))
        return false;
    for (const auto& qx : x.inner) {
        bool covered = false;
        for (const auto& qy : y.inner)
            if (dominates_existential(qy, qx)) {
                covered = true;
                break;
            }
        if (!covered)
            return false;
    }
    return true;
}

void prune_outer(std::vector<OuterView>& v)
{
    sort_unique(v);
    std::vector<OuterView> kept;
    for (std::size_t i = 0; i < v.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < v.size() && !redundant; ++j)
            redundant = j != i && outer_harder(v[j], v[i]);
        if (!redundant)
            kept.push_back(v[i]);
    }
    v = std::move(kept);
}

class TraceTranslator {
public:
    TraceTranslator(const TraceAlphabet& alpha, const TranslationOptions& opts) : alpha_(alpha), opts_(opts) {}

    const AutomataPair& build(const Formula& f)
    {
        const std::string key = render(f);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        AutomataPair p = build_uncached(f);
        return cache_.emplace(key, std::move(p)).first->second;
    }

private:
    AutomataPair build_uncached(const Formula& f)
    {
        switch (f.kind()) {
        case Formula::Kind::True:
            return {nba_universal(alpha_.letters()), nba_empty(alpha_.letters())};
        case Formula::Kind::Not: {
            const AutomataPair& p = build(f.operand());
            return {p.neg, p.pos};
        }
        case Formula::Kind::Or: {
            const AutomataPair l = build(f.left());
            const AutomataPair& r = build(f.right());
            return {finish(nba_union(l.pos, r.pos)), finish(nba_intersection(l.neg, r.neg))};
        }
        case Formula::Kind::Next: {
            const Letter a = alpha_.index(f.letter());
            const AutomataPair& p = build(f.operand());
            Nba pos = finish(next_automaton(a, p.pos));
            Nba neg = finish(nba_union(no_minimal(a), next_automaton(a, p.neg)));
            return {std::move(pos), std::move(neg)};
        }
        case Formula::Kind::Until: {
            const AutomataPair l = build(f.left());
            const AutomataPair& r = build(f.right());
            Nba pos = finish(until_positive(l.pos, r.pos, !nba_is_empty(l.neg)));
            Nba neg = finish(until_negative(l.neg, r.neg));
            return {std::move(pos), std::move(neg)};
        }
        }
        throw std::logic_error("unhandled formula kind");
    }

    Nba finish(const Nba& a) const
    {
        Nba r = nba_reduce(a);
        check_budget(r.num_states());
        return r;
    }

    Nba finish(const Aba& a) const { return finish(miyano_hayashi(a, opts_.state_budget)); }

    void check_budget(std::size_t n) const
    {
        if (n > opts_.state_budget)
            throw BudgetExceeded("translation exceeded the state budget of " + std::to_string(opts_.state_budget));
    }

    LetterMask dep(Letter a) const { return alpha_.dependents_of(a); }

    /// ⟨a⟩φ: letters independent of a pass while φ runs; then a is consumed
    /// without advancing φ. Letters dependent on a (other than a) reject.
    Nba next_automaton(Letter a, const Nba& body) const
    {
        Nba out;
        out.letters = alpha_.letters();
        const std::size_t n = body.num_states();
        for (State q = 0; q < n; ++q)
            out.add_state(false);
        for (State q = 0; q < n; ++q)
            out.add_state(body.accepting[q]);
        for (State q = 0; q < n; ++q) {
            for (Letter x = 0; x < alpha_.size(); ++x) {
                for (State r : body.delta[q][x]) {
                    if (!alpha_.dependent(a, x))
                        out.add_transition(q, x, r);
                    out.add_transition(n + q, x, n + r);
                }
            }
            out.add_transition(q, a, n + q);
        }
        out.initial = body.initial;
        out.normalize();
        return out;
    }

    /// Traces without an a-labelled minimal event.
    Nba no_minimal(Letter a) const
    {
        Nba out;
        out.letters = alpha_.letters();
        const State waiting = out.add_state(true);
        const State done = out.add_state(true);
        for (Letter x = 0; x < alpha_.size(); ++x) {
            out.add_transition(done, x, done);
            if (x == a)
                continue;
            out.add_transition(waiting, x, alpha_.dependent(a, x) ? done : waiting);
        }
        out.initial = {waiting};
        out.normalize();
        return out;
    }

    /// Copies `a` into the alternating automaton as existential states.
    static State embed(Aba& aba, const Nba& a)
    {
        const State offset = aba.num_states();
        for (State q = 0; q < a.num_states(); ++q)
            aba.add_state(a.accepting[q]);
        for (State q = 0; q < a.num_states(); ++q)
            for (Letter x = 0; x < a.num_letters(); ++x) {
                std::vector<PosBool> succ;
                for (State r : a.delta[q][x])
                    succ.push_back(PosBool::var(offset + r));
                aba.delta[offset + q][x] = PosBool::disj(std::move(succ));
            }
        return offset;
    }

    static PosBool any_state(const StateSet& s, State offset)
    {
        std::vector<PosBool> parts;
        s.for_each([&](std::size_t q) { parts.push_back(PosBool::var(offset + q)); });
        return PosBool::disj(std::move(parts));
    }

    static InnerView fed(const InnerView& v, const Nba& a, Letter x, LetterMask dx, bool strict)
    {
        return {a.post(v.states, x), v.blocked | dx, strict};
    }

    Aba new_aba() const
    {
        Aba aba;
        aba.letters = alpha_.letters();
        return aba;
    }

    Nba until_positive(const Nba& phi, const Nba& psi, bool track_inner)
    {
        if (nba_is_empty(psi))
            return nba_empty(alpha_.letters());
        Aba aba = new_aba();
        const State psi_off = embed(aba, psi);
        const State phi_off = embed(aba, phi);

        std::map<OuterView, State> ids;
        std::vector<OuterView> trackers;
        auto close = [&](const OuterView& t) {
            std::vector<PosBool> parts{any_state(t.states, psi_off)};
            for (const auto& q : t.inner)
                if (q.strict)
                    parts.push_back(any_state(q.states, phi_off));
            return PosBool::conj(std::move(parts));
        };
        auto option = [&](OuterView t) {
            prune_universal(t.inner);
            for (const auto& q : t.inner)
                if (q.strict && q.states.empty())
                    return PosBool::falsity();
            if (t.states.empty())
                return PosBool::falsity();
            PosBool closed = close(t);
            auto [it, fresh] = ids.emplace(t, 0);
            if (fresh) {
                check_budget(aba.num_states() + 1);
                it->second = aba.add_state(false);
                trackers.push_back(t);
            }
            return PosBool::disj({PosBool::var(it->second), std::move(closed)});
        };

        OuterView start{StateSet::from(psi.initial), 0, {}};
        if (track_inner)
            start.inner.push_back({StateSet::from(phi.initial), 0, false});
        aba.initial = option(start);

        for (std::size_t i = 0; i < trackers.size(); ++i) {
            const State self = ids.at(trackers[i]);
            for (Letter x = 0; x < alpha_.size(); ++x) {
                const OuterView t = trackers[i];
                const LetterMask dx = dep(x);
                std::vector<PosBool> options;
                // x goes to the residue of P, hence of every Q.
                {
                    OuterView u{psi.post(t.states, x), t.blocked | dx, {}};
                    for (const auto& q : t.inner)
                        u.inner.push_back(fed(q, phi, x, dx, q.strict));
                    options.push_back(option(std::move(u)));
                }
                // x joins P; each Q may take it as well or leave it.
                if ((t.blocked & letter_bit(x)) == 0) {
                    OuterView m{t.states, t.blocked, {}};
                    for (const auto& q : t.inner) {
                        if ((q.blocked & letter_bit(x)) == 0)
                            m.inner.push_back(q);
                        m.inner.push_back(fed(q, phi, x, dx, true));
                    }
                    options.push_back(option(std::move(m)));
                }
                aba.delta[self][x] = PosBool::disj(std::move(options));
            }
        }
        return miyano_hayashi(aba, opts_.state_budget);
    }

    Nba until_negative(const Nba& neg_phi, const Nba& neg_psi)
    {
        Aba aba = new_aba();
        const State psi_off = embed(aba, neg_psi);
        const State phi_off = embed(aba, neg_phi);

        std::map<std::vector<OuterView>, State> ids;
        std::vector<std::vector<OuterView>> trackers;
        auto intern = [&](std::vector<OuterView> set) {
            prune_outer(set);
            auto [it, fresh] = ids.emplace(set, 0);
            if (fresh) {
                check_budget(aba.num_states() + 1);
                it->second = aba.add_state(true);
                trackers.push_back(std::move(set));
            }
            return PosBool::var(it->second);
        };
        // P may be complete: ¬ψ on its residue or ¬φ on that of a strict Q.
        auto complete = [&](const OuterView& p) {
            std::vector<PosBool> parts{any_state(p.states, psi_off)};
            for (const auto& q : p.inner)
                if (q.strict)
                    parts.push_back(any_state(q.states, phi_off));
            return PosBool::disj(std::move(parts));
        };
        auto drop_dead = [](std::vector<InnerView>& v) {
            std::erase_if(v, [](const InnerView& q) { return q.states.empty(); });
            prune_existential(v);
        };

        OuterView start{StateSet::from(neg_psi.initial), 0, {}};
        start.inner.push_back({StateSet::from(neg_phi.initial), 0, false});
        drop_dead(start.inner);
        aba.initial = PosBool::conj({intern({start}), complete(start)});

        for (std::size_t i = 0; i < trackers.size(); ++i) {
            const State self = ids.at(trackers[i]);
            for (Letter x = 0; x < alpha_.size(); ++x) {
                const std::vector<OuterView> set = trackers[i];
                const LetterMask dx = dep(x);
                std::vector<OuterView> next;
                std::vector<PosBool> parts;
                for (const auto& p : set) {
                    OuterView r{neg_psi.post(p.states, x), p.blocked | dx, {}};
                    for (const auto& q : p.inner)
                        r.inner.push_back(fed(q, neg_phi, x, dx, q.strict));
                    drop_dead(r.inner);
                    next.push_back(std::move(r));
                    if ((p.blocked & letter_bit(x)) != 0)
                        continue;
                    OuterView m{p.states, p.blocked, {}};
                    for (const auto& q : p.inner) {
                        if ((q.blocked & letter_bit(x)) == 0)
                            m.inner.push_back(q);
                        m.inner.push_back(fed(q, neg_phi, x, dx, true));
                    }
                    drop_dead(m.inner);
                    parts.push_back(complete(m));
                    next.push_back(std::move(m));
                }
                parts.push_back(intern(std::move(next)));
                aba.delta[self][x] = PosBool::conj(std::move(parts));
            }
        }
        return miyano_hayashi(aba, opts_.state_budget);
    }

    const TraceAlphabet& alpha_;
    TranslationOptions opts_;
    std::map<std::string, AutomataPair> cache_;
};

} // namespace

Nba ltrl_to_nba(const Formula& f, const TraceAlphabet& alpha, const TranslationOptions& opts)
{
    require_letters(f, alpha);
    return TraceTranslator(alpha, opts).build(f).pos;
}

std::pair<Nba, Nba> translate_both(const Formula& f, const TraceAlphabet& alpha, Backend backend,
                                   const TranslationOptions& opts)
{
    require_letters(f, alpha);
    if (backend == Backend::Word)
        return {ltl_to_nba(f, alpha, opts), ltl_to_nba(Formula::negation(f), alpha, opts)};
    TraceTranslator t(alpha, opts);
    const AutomataPair& p = t.build(f);
    return {p.pos, p.neg};
}

} // namespace tracemon
