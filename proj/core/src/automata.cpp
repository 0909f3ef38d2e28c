#include "tracemon/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "tracemon/errors.hpp"

namespace tracemon {

std::string_view to_token(Verdict v)
{
    switch (v) {
    case Verdict::Top: return "top";
    case Verdict::Unknown: return "unknown";
    case Verdict::Bottom: return "bottom";
    }
    return "unknown";
}

std::string_view to_symbol(Verdict v)
{
    switch (v) {
    case Verdict::Top: return "⊤";
    case Verdict::Unknown: return "?";
    case Verdict::Bottom: return "⊥";
    }
    return "?";
}

std::optional<Verdict> verdict_from_token(std::string_view token)
{
    if (token == "top")
        return Verdict::Top;
    if (token == "unknown")
        return Verdict::Unknown;
    if (token == "bottom")
        return Verdict::Bottom;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

std::size_t NondetAutomaton::num_transitions() const
{
    std::size_t n = 0;
    for (const auto& row : delta)
        for (const auto& succ : row)
            n += succ.size();
    return n;
}

State NondetAutomaton::add_state(bool is_accepting)
{
    delta.emplace_back(letters.size());
    accepting.push_back(is_accepting);
    return delta.size() - 1;
}

void NondetAutomaton::add_transition(State from, Letter a, State to)
{
    delta[from][a].push_back(to);
}

namespace {

void sort_unique(std::vector<State>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

void NondetAutomaton::normalize()
{
    for (auto& row : delta)
        for (auto& succ : row)
            sort_unique(succ);
    sort_unique(initial);
}

StateSet NondetAutomaton::post(const StateSet& from, Letter a) const
{
    StateSet out;
    from.for_each([&](std::size_t q) {
        for (State r : delta[q][a])
            out.insert(r);
    });
    return out;
}

bool Nfa::accepts(const Word& w) const
{
    StateSet cur = StateSet::from(initial);
    for (Letter a : w) {
        cur = post(cur, a);
        if (cur.empty())
            return false;
    }
    bool acc = false;
    cur.for_each([&](std::size_t q) { acc = acc || accepting[q]; });
    return acc;
}

State Dfa::run(const Word& w) const
{
    State q = initial;
    for (Letter a : w)
        q = delta[q][a];
    return q;
}

State MooreMachine::run(const Word& w, State from) const
{
    State q = from;
    for (Letter a : w)
        q = delta[q][a];
    return q;
}

// ---------------------------------------------------------------------------
// Positive Boolean formulas

PosBool PosBool::var(State q)
{
    PosBool p(Kind::Var);
    p.var_ = q;
    return p;
}

namespace {

PosBool combine(PosBool::Kind kind, std::vector<PosBool> parts, PosBool absorbing, PosBool neutral,
                PosBool (*make)(PosBool::Kind, std::vector<PosBool>))
{
    std::vector<PosBool> flat;
    for (auto& p : parts) {
        if (p.kind() == absorbing.kind())
            return absorbing;
        if (p.kind() == neutral.kind())
            continue;
        if (p.kind() == kind) {
            for (const auto& q : p.parts())
                flat.push_back(q);
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty())
        return neutral;
    if (flat.size() == 1)
        return flat.front();
    return make(kind, std::move(flat));
}

/// Removes duplicates and supersets; result is sorted.
void minimize_cubes(std::vector<StateSet>& cubes)
{
    std::sort(cubes.begin(), cubes.end(), [](const StateSet& x, const StateSet& y) {
        const auto cx = x.count(), cy = y.count();
        return cx != cy ? cx < cy : x < y;
    });
    cubes.erase(std::unique(cubes.begin(), cubes.end()), cubes.end());
    std::vector<StateSet> kept;
    for (auto& c : cubes) {
        bool subsumed = false;
        for (const auto& k : kept)
            if (k.is_subset_of(c)) {
                subsumed = true;
                break;
            }
        if (!subsumed)
            kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end());
    cubes = std::move(kept);
}

void check_cube_limit(std::size_t n, std::size_t limit)
{
    if (n > limit)
        throw BudgetExceeded("Boolean transition condition has more than " + std::to_string(limit) +
                             " minimal models");
}

/// Minimal models of the conjunction of two cube lists.
std::vector<StateSet> cube_product(const std::vector<StateSet>& x, const std::vector<StateSet>& y,
                                   std::size_t limit)
{
    std::vector<StateSet> out;
    for (const auto& a : x)
        for (const auto& b : y) {
            StateSet c = a;
            c |= b;
            out.push_back(std::move(c));
            check_cube_limit(out.size(), limit);
        }
    minimize_cubes(out);
    return out;
}

} // namespace

PosBool PosBool::conj(std::vector<PosBool> parts)
{
    return combine(Kind::And, std::move(parts), falsity(), truth(), [](Kind k, std::vector<PosBool> ps) {
        PosBool p(k);
        p.parts_ = std::move(ps);
        return p;
    });
}

PosBool PosBool::disj(std::vector<PosBool> parts)
{
    return combine(Kind::Or, std::move(parts), truth(), falsity(), [](Kind k, std::vector<PosBool> ps) {
        PosBool p(k);
        p.parts_ = std::move(ps);
        return p;
    });
}

PosBool PosBool::any_of(const std::vector<State>& states)
{
    std::vector<PosBool> parts;
    parts.reserve(states.size());
    for (State q : states)
        parts.push_back(var(q));
    return disj(std::move(parts));
}

std::vector<StateSet> PosBool::cubes(std::size_t limit) const
{
    switch (kind_) {
    case Kind::False:
        return {};
    case Kind::True:
        return {StateSet{}};
    case Kind::Var:
        return {StateSet{var_}};
    case Kind::Or: {
        std::vector<StateSet> out;
        for (const auto& p : parts_) {
            auto c = p.cubes(limit);
            out.insert(out.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
            check_cube_limit(out.size(), limit);
        }
        minimize_cubes(out);
        return out;
    }
    case Kind::And: {
        std::vector<StateSet> out{StateSet{}};
        for (const auto& p : parts_) {
            out = cube_product(out, p.cubes(limit), limit);
            if (out.empty())
                break;
        }
        return out;
    }
    }
    return {};
}

bool PosBool::satisfied_by(const StateSet& s) const
{
    switch (kind_) {
    case Kind::False: return false;
    case Kind::True: return true;
    case Kind::Var: return s.contains(var_);
    case Kind::And:
        return std::all_of(parts_.begin(), parts_.end(), [&](const PosBool& p) { return p.satisfied_by(s); });
    case Kind::Or:
        return std::any_of(parts_.begin(), parts_.end(), [&](const PosBool& p) { return p.satisfied_by(s); });
    }
    return false;
}

std::string PosBool::str() const
{
    switch (kind_) {
    case Kind::False: return "false";
    case Kind::True: return "true";
    case Kind::Var: return "q" + std::to_string(var_);
    case Kind::And:
    case Kind::Or: {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0)
                s += kind_ == Kind::And ? " & " : " | ";
            s += parts_[i].str();
        }
        return s + ")";
    }
    }
    return {};
}

State Aba::add_state(bool is_accepting)
{
    delta.emplace_back(letters.size(), PosBool::falsity());
    accepting.push_back(is_accepting);
    return delta.size() - 1;
}

// ---------------------------------------------------------------------------
// Graph helpers

std::vector<std::size_t> strongly_connected_components(const std::vector<std::vector<State>>& succ,
                                                       std::size_t* component_count)
{
    // Iterative Tarjan.
    const std::size_t n = succ.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<State> stack;
    std::vector<std::pair<State, std::size_t>> call;
    std::size_t next_index = 0, next_comp = 0;

    for (State root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, i] = call.back();
            if (i < succ[v].size()) {
                const State w = succ[v][i++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                State w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
            const State done = v;
            call.pop_back();
            if (!call.empty()) {
                const State parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
        }
    }
    if (component_count)
        *component_count = next_comp;
    return comp;
}

namespace {

std::vector<std::vector<State>> flat_successors(const NondetAutomaton& a)
{
    std::vector<std::vector<State>> succ(a.num_states());
    for (State q = 0; q < a.num_states(); ++q) {
        for (const auto& row : a.delta[q])
            succ[q].insert(succ[q].end(), row.begin(), row.end());
        sort_unique(succ[q]);
    }
    return succ;
}

/// States that can reach a node in `good` (including the good nodes).
std::vector<bool> backward_reach(const std::vector<std::vector<State>>& succ, std::vector<bool> good)
{
    const std::size_t n = succ.size();
    std::vector<std::vector<State>> pred(n);
    for (State q = 0; q < n; ++q)
        for (State r : succ[q])
            pred[r].push_back(q);
    std::vector<State> work;
    for (State q = 0; q < n; ++q)
        if (good[q])
            work.push_back(q);
    while (!work.empty()) {
        const State q = work.back();
        work.pop_back();
        for (State p : pred[q])
            if (!good[p]) {
                good[p] = true;
                work.push_back(p);
            }
    }
    return good;
}

/// Nodes lying on a cycle through an accepting node.
std::vector<bool> accepting_cycle_nodes(const std::vector<std::vector<State>>& succ,
                                        const std::vector<bool>& accepting)
{
    const std::size_t n = succ.size();
    std::size_t ncomp = 0;
    const auto comp = strongly_connected_components(succ, &ncomp);
    std::vector<bool> nontrivial(ncomp, false), has_acc(ncomp, false);
    for (State q = 0; q < n; ++q) {
        if (accepting[q])
            has_acc[comp[q]] = true;
        for (State r : succ[q])
            if (comp[r] == comp[q])
                nontrivial[comp[q]] = true;
    }
    std::vector<bool> good(n, false);
    for (State q = 0; q < n; ++q)
        good[q] = nontrivial[comp[q]] && has_acc[comp[q]];
    return good;
}

} // namespace

// ---------------------------------------------------------------------------
// Pipeline stages

std::vector<bool> per_state_nonempty(const Nba& a)
{
    const auto succ = flat_successors(a);
    return backward_reach(succ, accepting_cycle_nodes(succ, a.accepting));
}

Nfa to_finite_acceptor(const Nba& a, const std::vector<bool>& nonempty)
{
    if (nonempty.size() != a.num_states())
        throw std::invalid_argument("nonemptiness map does not match the automaton");
    Nfa n;
    n.letters = a.letters;
    n.delta = a.delta;
    n.initial = a.initial;
    n.accepting = nonempty;
    return n;
}

Dfa determinize(const Nfa& n, std::size_t state_budget)
{
    Dfa d;
    d.letters = n.letters;
    std::unordered_map<StateSet, State, StateSetHash> ids;
    std::deque<State> work;
    auto intern = [&](StateSet s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        const State id = d.subsets.size();
        if (id >= state_budget)
            throw BudgetExceeded("subset construction exceeded the state budget of " +
                                 std::to_string(state_budget));
        bool acc = false;
        s.for_each([&](std::size_t q) { acc = acc || n.accepting[q]; });
        ids.emplace(s, id);
        d.subsets.push_back(std::move(s));
        d.accepting.push_back(acc);
        d.delta.emplace_back(n.num_letters(), 0);
        work.push_back(id);
        return id;
    };
    d.initial = intern(StateSet::from(n.initial));
    while (!work.empty()) {
        const State s = work.front();
        work.pop_front();
        for (Letter a = 0; a < n.num_letters(); ++a) {
            StateSet next = n.post(d.subsets[s], a);
            const State t = intern(std::move(next));
            d.delta[s][a] = t;
        }
    }
    return d;
}

Nba miyano_hayashi(const Aba& a, std::size_t state_budget)
{
    const std::size_t k = a.letters.size();
    StateSet final_states;
    for (State q = 0; q < a.num_states(); ++q)
        if (a.accepting[q])
            final_states.insert(q);

    // Minimal models of each transition condition, computed on demand.
    std::vector<std::vector<std::optional<std::vector<StateSet>>>> cube_cache(
        a.num_states(), std::vector<std::optional<std::vector<StateSet>>>(k));
    auto cubes_of = [&](State q, Letter l) -> const std::vector<StateSet>& {
        auto& slot = cube_cache[q][l];
        if (!slot)
            slot = a.delta[q][l].cubes(state_budget);
        return *slot;
    };
    auto conj_cubes = [&](const StateSet& s, Letter l) {
        std::vector<StateSet> acc{StateSet{}};
        s.for_each([&](std::size_t q) {
            if (!acc.empty())
                acc = cube_product(acc, cubes_of(q, l), state_budget);
        });
        return acc;
    };

    Nba out;
    out.letters = a.letters;
    using Key = std::pair<StateSet, StateSet>;
    std::map<Key, State> ids;
    std::vector<Key> keys;
    auto intern = [&](Key key) {
        auto it = ids.find(key);
        if (it != ids.end())
            return it->second;
        if (keys.size() >= state_budget)
            throw BudgetExceeded("breakpoint construction exceeded the state budget of " +
                                 std::to_string(state_budget));
        const State id = out.add_state(key.second.empty());
        ids.emplace(key, id);
        keys.push_back(std::move(key));
        return id;
    };

    for (auto& s : a.initial.cubes(state_budget)) {
        StateSet o = s.minus(final_states);
        out.initial.push_back(intern({std::move(s), std::move(o)}));
    }
    for (State id = 0; id < keys.size(); ++id) {
        for (Letter l = 0; l < k; ++l) {
            const StateSet s = keys[id].first;
            const StateSet o = keys[id].second;
            const auto s_next = conj_cubes(s, l);
            if (s_next.empty())
                continue;
            if (o.empty()) {
                for (const auto& s2 : s_next)
                    out.add_transition(id, l, intern({s2, s2.minus(final_states)}));
                continue;
            }
            const auto o_next = conj_cubes(o, l);
            for (const auto& s2 : s_next)
                for (const auto& o2 : o_next)
                    if (o2.is_subset_of(s2))
                        out.add_transition(id, l, intern({s2, o2.minus(final_states)}));
        }
    }
    out.normalize();
    return out;
}

MooreMachine product_moore(const Dfa& pos, const Dfa& neg)
{
    if (pos.letters != neg.letters)
        throw std::invalid_argument("product of automata over different alphabets");
    MooreMachine m;
    m.letters = pos.letters;
    std::map<std::pair<State, State>, State> ids;
    std::vector<std::pair<State, State>> pairs;
    auto intern = [&](State p, State q) {
        auto [it, fresh] = ids.emplace(std::make_pair(p, q), pairs.size());
        if (!fresh)
            return it->second;
        if (!pos.accepting[p] && !neg.accepting[q])
            throw IntegrityError("monitor product reached a state rejecting both the formula and its negation");
        pairs.emplace_back(p, q);
        m.output.push_back(!neg.accepting[q] ? Verdict::Top : !pos.accepting[p] ? Verdict::Bottom : Verdict::Unknown);
        m.delta.emplace_back(m.letters.size(), 0);
        return it->second;
    };
    m.initial = intern(pos.initial, neg.initial);
    for (State s = 0; s < pairs.size(); ++s)
        for (Letter a = 0; a < m.letters.size(); ++a) {
            const State t = intern(pos.delta[pairs[s].first][a], neg.delta[pairs[s].second][a]);
            m.delta[s][a] = t;
        }
    return m;
}

namespace {

/// Breadth-first renumbering of the part reachable from the initial state.
MooreMachine canonical_moore(const MooreMachine& m)
{
    std::vector<State> id(m.num_states(), static_cast<State>(-1));
    std::vector<State> order{m.initial};
    id[m.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (Letter a = 0; a < m.letters.size(); ++a) {
            const State t = m.delta[order[i]][a];
            if (id[t] == static_cast<State>(-1)) {
                id[t] = order.size();
                order.push_back(t);
            }
        }
    MooreMachine out;
    out.letters = m.letters;
    out.initial = 0;
    for (State old : order) {
        out.output.push_back(m.output[old]);
        std::vector<State> row(m.letters.size());
        for (Letter a = 0; a < m.letters.size(); ++a)
            row[a] = id[m.delta[old][a]];
        out.delta.push_back(std::move(row));
    }
    return out;
}

} // namespace

MooreMachine minimize_moore(const MooreMachine& input)
{
    const MooreMachine m = canonical_moore(input);
    const std::size_t n = m.num_states();
    const std::size_t k = m.letters.size();

    // Moore-style refinement: block ids from (block, successor blocks) signatures.
    std::vector<std::size_t> block(n);
    for (State q = 0; q < n; ++q)
        block[q] = static_cast<std::size_t>(m.output[q]);
    std::size_t nblocks = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next(n);
        for (State q = 0; q < n; ++q) {
            std::vector<std::size_t> sig;
            sig.reserve(k + 1);
            sig.push_back(block[q]);
            for (Letter a = 0; a < k; ++a)
                sig.push_back(block[m.delta[q][a]]);
            next[q] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
        }
        const std::size_t count = sig_ids.size();
        block = std::move(next);
        if (count == nblocks)
            break;
        nblocks = count;
    }

    MooreMachine q;
    q.letters = m.letters;
    q.initial = block[m.initial];
    q.output.assign(nblocks, Verdict::Unknown);
    q.delta.assign(nblocks, std::vector<State>(k, 0));
    for (State s = 0; s < n; ++s) {
        q.output[block[s]] = m.output[s];
        for (Letter a = 0; a < k; ++a)
            q.delta[block[s]][a] = block[m.delta[s][a]];
    }
    return canonical_moore(q);
}

bool moore_isomorphic(const MooreMachine& m1, const MooreMachine& m2)
{
    if (m1.letters != m2.letters)
        return false;
    constexpr State none = static_cast<State>(-1);
    std::vector<State> f(m1.num_states(), none), g(m2.num_states(), none);
    std::vector<std::pair<State, State>> work{{m1.initial, m2.initial}};
    f[m1.initial] = m2.initial;
    g[m2.initial] = m1.initial;
    while (!work.empty()) {
        const auto [p, q] = work.back();
        work.pop_back();
        if (m1.output[p] != m2.output[q])
            return false;
        for (Letter a = 0; a < m1.letters.size(); ++a) {
            const State p2 = m1.delta[p][a], q2 = m2.delta[q][a];
            if (f[p2] == none && g[q2] == none) {
                f[p2] = q2;
                g[q2] = p2;
                work.emplace_back(p2, q2);
            } else if (f[p2] != q2 || g[q2] != p2) {
                return false;
            }
        }
    }
    return true;
}

bool lasso_member(const Nba& a, const Word& u, const Word& v)
{
    if (v.empty())
        throw InputError("lasso period must be non-empty");
    const std::size_t len = u.size() + v.size();
    auto letter_at = [&](std::size_t pos) { return pos < u.size() ? u[pos] : v[pos - u.size()]; };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < len ? pos + 1 : u.size(); };

    // Product nodes (q, pos), numbered on demand from the initial nodes.
    std::map<std::pair<State, std::size_t>, std::size_t> ids;
    std::vector<std::pair<State, std::size_t>> nodes;
    std::vector<std::vector<State>> succ;
    auto intern = [&](State q, std::size_t pos) {
        auto [it, fresh] = ids.emplace(std::make_pair(q, pos), nodes.size());
        if (fresh) {
            nodes.emplace_back(q, pos);
            succ.emplace_back();
        }
        return it->second;
    };
    for (State q : a.initial)
        intern(q, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto [q, pos] = nodes[i];
        for (State r : a.delta[q][letter_at(pos)]) {
            const std::size_t j = intern(r, next_pos(pos));
            succ[i].push_back(j);
        }
    }
    std::vector<bool> acc(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        acc[i] = a.accepting[nodes[i].first];
    const auto good = accepting_cycle_nodes(succ, acc);
    return std::find(good.begin(), good.end(), true) != good.end();
}

// ---------------------------------------------------------------------------
// NBA utilities

Nba nba_universal(std::vector<std::string> letters)
{
    Nba a;
    a.letters = std::move(letters);
    const State q = a.add_state(true);
    for (Letter l = 0; l < a.num_letters(); ++l)
        a.add_transition(q, l, q);
    a.initial = {q};
    return a;
}

Nba nba_empty(std::vector<std::string> letters)
{
    Nba a;
    a.letters = std::move(letters);
    return a;
}

namespace {

/// Keeps states marked in `keep`, preserving their relative order.
Nba restrict_states(const Nba& a, const std::vector<bool>& keep)
{
    constexpr State none = static_cast<State>(-1);
    std::vector<State> id(a.num_states(), none);
    Nba out;
    out.letters = a.letters;
    for (State q = 0; q < a.num_states(); ++q)
        if (keep[q])
            id[q] = out.add_state(a.accepting[q]);
    for (State q = 0; q < a.num_states(); ++q) {
        if (!keep[q])
            continue;
        for (Letter l = 0; l < a.num_letters(); ++l)
            for (State r : a.delta[q][l])
                if (keep[r])
                    out.add_transition(id[q], l, id[r]);
    }
    for (State q : a.initial)
        if (keep[q])
            out.initial.push_back(id[q]);
    out.normalize();
    return out;
}

} // namespace

Nba nba_trim(const Nba& a)
{
    const auto nonempty = per_state_nonempty(a);
    std::vector<bool> keep(a.num_states(), false);
    std::vector<State> work;
    for (State q : a.initial)
        if (nonempty[q] && !keep[q]) {
            keep[q] = true;
            work.push_back(q);
        }
    while (!work.empty()) {
        const State q = work.back();
        work.pop_back();
        for (const auto& row : a.delta[q])
            for (State r : row)
                if (nonempty[r] && !keep[r]) {
                    keep[r] = true;
                    work.push_back(r);
                }
    }
    return restrict_states(a, keep);
}

Nba nba_reduce(const Nba& input)
{
    const Nba a = nba_trim(input);
    const std::size_t n = a.num_states();
    const std::size_t k = a.num_letters();
    std::vector<std::size_t> block(n);
    for (State q = 0; q < n; ++q)
        block[q] = a.accepting[q] ? 1 : 0;
    std::size_t nblocks = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> sig_ids;
        std::vector<std::size_t> next(n);
        for (State q = 0; q < n; ++q) {
            std::vector<std::size_t> sig{block[q]};
            for (Letter l = 0; l < k; ++l) {
                std::vector<std::size_t> targets;
                for (State r : a.delta[q][l])
                    targets.push_back(block[r]);
                sort_unique(targets);
                sig.push_back(static_cast<std::size_t>(-1)); // separator
                sig.insert(sig.end(), targets.begin(), targets.end());
            }
            next[q] = sig_ids.emplace(std::move(sig), sig_ids.size()).first->second;
        }
        const std::size_t count = sig_ids.size();
        block = std::move(next);
        if (count == nblocks)
            break;
        nblocks = count;
    }
    if (nblocks == n)
        return a;

    // Number blocks by their least member so the result is deterministic.
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> renumber(nblocks, none);
    std::size_t next_id = 0;
    for (State q = 0; q < n; ++q)
        if (renumber[block[q]] == none)
            renumber[block[q]] = next_id++;
    Nba out;
    out.letters = a.letters;
    for (std::size_t b = 0; b < nblocks; ++b)
        out.add_state(false);
    for (State q = 0; q < n; ++q) {
        const State b = renumber[block[q]];
        out.accepting[b] = a.accepting[q];
        for (Letter l = 0; l < k; ++l)
            for (State r : a.delta[q][l])
                out.add_transition(b, l, renumber[block[r]]);
    }
    for (State q : a.initial)
        out.initial.push_back(renumber[block[q]]);
    out.normalize();
    return out;
}

Nba nba_union(const Nba& a, const Nba& b)
{
    if (a.letters != b.letters)
        throw std::invalid_argument("union of automata over different alphabets");
    Nba out = a;
    const std::size_t off = a.num_states();
    for (State q = 0; q < b.num_states(); ++q)
        out.add_state(b.accepting[q]);
    for (State q = 0; q < b.num_states(); ++q)
        for (Letter l = 0; l < b.num_letters(); ++l)
            for (State r : b.delta[q][l])
                out.add_transition(off + q, l, off + r);
    for (State q : b.initial)
        out.initial.push_back(off + q);
    out.normalize();
    return out;
}

Nba nba_intersection(const Nba& a, const Nba& b)
{
    if (a.letters != b.letters)
        throw std::invalid_argument("intersection of automata over different alphabets");
    // Flag 0 waits for an accepting state of `a`, flag 1 for one of `b`.
    Nba out;
    out.letters = a.letters;
    using Key = std::tuple<State, State, int>;
    std::map<Key, State> ids;
    std::vector<Key> keys;
    auto intern = [&](State p, State q, int flag) {
        auto [it, fresh] = ids.emplace(Key{p, q, flag}, keys.size());
        if (fresh) {
            keys.emplace_back(p, q, flag);
            out.add_state(flag == 0 && a.accepting[p]);
        }
        return it->second;
    };
    for (State p : a.initial)
        for (State q : b.initial)
            out.initial.push_back(intern(p, q, 0));
    for (State s = 0; s < keys.size(); ++s) {
        const auto [p, q, flag] = keys[s];
        const int next_flag = flag == 0 ? (a.accepting[p] ? 1 : 0) : (b.accepting[q] ? 0 : 1);
        for (Letter l = 0; l < out.num_letters(); ++l)
            for (State p2 : a.delta[p][l])
                for (State q2 : b.delta[q][l]) {
                    const State t = intern(p2, q2, next_flag);
                    out.add_transition(s, l, t);
                }
    }
    out.normalize();
    return out;
}

bool nba_is_empty(const Nba& a)
{
    const auto nonempty = per_state_nonempty(a);
    return std::none_of(a.initial.begin(), a.initial.end(), [&](State q) { return nonempty[q]; });
}

} // namespace tracemon
