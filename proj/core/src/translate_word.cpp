// Tableau translation of word LTL into a Büchi automaton.
//
// A tableau state assigns a truth value to every Next and Until node of the
// closure; the other nodes are evaluated from those. A —x→ B is allowed when
// each Next node holds in A exactly if x is its letter and its operand holds
// in B, and each Until node obeys the expansion law (ψ ∨ (φ ∧ X(φ U ψ))).
// Every Until contributes the generalized Büchi set {¬(φ U ψ) ∨ ψ}, which is
// degeneralized with a round-robin counter.

#include <map>
#include <unordered_map>

#include "tracemon/errors.hpp"
#include "tracemon/translate.hpp"

namespace tracemon {

namespace {

struct Closure {
    struct Node {
        Formula::Kind kind;
        Letter letter = 0;
        std::size_t left = 0, right = 0;
        int bit = -1; ///< assignment bit of Next/Until nodes
    };
    std::vector<Node> nodes; // children precede parents
    std::vector<std::size_t> untils;
    std::size_t root = 0;
    int bits = 0;

    Closure(const Formula& f, const TraceAlphabet& alpha)
    {
        std::map<std::string, std::size_t> ids;
        root = add(f, alpha, ids);
    }

    std::size_t add(const Formula& f, const TraceAlphabet& alpha, std::map<std::string, std::size_t>& ids)
    {
        const std::string key = render(f);
        if (auto it = ids.find(key); it != ids.end())
            return it->second;
        Node n{f.kind()};
        switch (f.kind()) {
        case Formula::Kind::True:
            break;
        case Formula::Kind::Not:
            n.left = add(f.operand(), alpha, ids);
            break;
        case Formula::Kind::Next:
            n.letter = alpha.index(f.letter());
            n.left = add(f.operand(), alpha, ids);
            n.bit = bits++;
            break;
        case Formula::Kind::Or:
        case Formula::Kind::Until:
            n.left = add(f.left(), alpha, ids);
            n.right = add(f.right(), alpha, ids);
            if (f.kind() == Formula::Kind::Until)
                n.bit = bits++;
            break;
        }
        nodes.push_back(n);
        if (f.kind() == Formula::Kind::Until)
            untils.push_back(nodes.size() - 1);
        ids.emplace(key, nodes.size() - 1);
        return nodes.size() - 1;
    }

    std::vector<bool> evaluate(std::uint64_t assignment) const
    {
        std::vector<bool> v(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Node& n = nodes[i];
            switch (n.kind) {
            case Formula::Kind::True: v[i] = true; break;
            case Formula::Kind::Not: v[i] = !v[n.left]; break;
            case Formula::Kind::Or: v[i] = v[n.left] || v[n.right]; break;
            case Formula::Kind::Next:
            case Formula::Kind::Until: v[i] = (assignment >> n.bit) & 1U; break;
            }
        }
        return v;
    }
};

} // namespace

Nba ltl_to_nba(const Formula& f, const TraceAlphabet& alpha, const TranslationOptions& opts)
{
    require_letters(f, alpha);
    const Closure cl(f, alpha);
    if (cl.bits >= 24 || (std::size_t{1} << cl.bits) > opts.state_budget)
        throw BudgetExceeded("tableau for a formula with " + std::to_string(cl.bits) +
                             " temporal subformulas exceeds the state budget");
    const std::uint64_t atoms = std::uint64_t{1} << cl.bits;
    std::vector<std::vector<bool>> values(atoms);
    for (std::uint64_t a = 0; a < atoms; ++a)
        values[a] = cl.evaluate(a);

    const std::size_t k = alpha.size();
    auto allowed = [&](std::uint64_t from, Letter x, std::uint64_t to) {
        const auto& va = values[from];
        const auto& vb = values[to];
        for (std::size_t i = 0; i < cl.nodes.size(); ++i) {
            const auto& n = cl.nodes[i];
            if (n.kind == Formula::Kind::Next) {
                if (va[i] != (x == n.letter && vb[n.left]))
                    return false;
            } else if (n.kind == Formula::Kind::Until) {
                if (va[i] != (va[n.right] || (va[n.left] && vb[i])))
                    return false;
            }
        }
        return true;
    };
    const std::size_t m = cl.untils.size();
    auto in_set = [&](std::uint64_t atom, std::size_t j) {
        const std::size_t u = cl.untils[j];
        return !values[atom][u] || values[atom][cl.nodes[u].right];
    };

    // Degeneralized states (atom, counter).
    Nba out;
    out.letters = alpha.letters();
    std::map<std::pair<std::uint64_t, std::size_t>, State> ids;
    std::vector<std::pair<std::uint64_t, std::size_t>> keys;
    auto intern = [&](std::uint64_t atom, std::size_t counter) {
        auto [it, fresh] = ids.emplace(std::make_pair(atom, counter), keys.size());
        if (fresh) {
            if (keys.size() >= opts.state_budget)
                throw BudgetExceeded("tableau exceeded the state budget of " + std::to_string(opts.state_budget));
            keys.emplace_back(atom, counter);
            out.add_state(m == 0 || (counter == 0 && in_set(atom, 0)));
        }
        return it->second;
    };
    for (std::uint64_t a = 0; a < atoms; ++a)
        if (values[a][cl.root])
            out.initial.push_back(intern(a, 0));
    for (State s = 0; s < keys.size(); ++s) {
        const auto [atom, counter] = keys[s];
        const std::size_t next_counter = m == 0 ? 0 : (in_set(atom, counter) ? (counter + 1) % m : counter);
        for (Letter x = 0; x < k; ++x)
            for (std::uint64_t b = 0; b < atoms; ++b)
                if (allowed(atom, x, b)) {
                    const State t = intern(b, next_counter);
                    out.add_transition(s, x, t);
                }
    }
    out.normalize();
    return nba_reduce(out);
}

} // namespace tracemon
