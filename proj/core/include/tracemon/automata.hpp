#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracemon/state_set.hpp"
#include "tracemon/trace.hpp"

namespace tracemon {

using State = std::size_t;

inline constexpr std::size_t unlimited_states = std::numeric_limits<std::size_t>::max();

/// Three-valued monitoring verdict.
enum class Verdict { Top, Unknown, Bottom };

/// `top`, `unknown`, `bottom`.
std::string_view to_token(Verdict v);
/// `⊤`, `?`, `⊥`.
std::string_view to_symbol(Verdict v);
std::optional<Verdict> verdict_from_token(std::string_view token);

/// Shared shape of NBA and NFA: explicit successor lists per (state, letter).
/// Missing successors mean the empty set.
struct NondetAutomaton {
    std::vector<std::string> letters;
    std::vector<std::vector<std::vector<State>>> delta; ///< [state][letter] -> sorted successors
    std::vector<State> initial;                         ///< sorted
    std::vector<bool> accepting;

    [[nodiscard]] std::size_t num_states() const { return delta.size(); }
    [[nodiscard]] std::size_t num_letters() const { return letters.size(); }
    [[nodiscard]] const std::vector<State>& successors(State q, Letter a) const { return delta[q][a]; }
    [[nodiscard]] std::size_t num_transitions() const;

    State add_state(bool is_accepting);
    void add_transition(State from, Letter a, State to);
    /// Sorts and deduplicates successor lists and initial states.
    void normalize();
    /// Successors of a set of states.
    [[nodiscard]] StateSet post(const StateSet& from, Letter a) const;
};

/// Nondeterministic Büchi automaton.
struct Nba : NondetAutomaton {};

/// Nondeterministic finite automaton; `accepting` plays the role of E.
struct Nfa : NondetAutomaton {
    [[nodiscard]] bool accepts(const Word& w) const;
};

/// Complete deterministic finite automaton.
struct Dfa {
    std::vector<std::string> letters;
    std::vector<std::vector<State>> delta; ///< [state][letter] -> successor
    State initial = 0;
    std::vector<bool> accepting;
    /// NFA subset each state stands for (subset construction provenance).
    std::vector<StateSet> subsets;

    [[nodiscard]] std::size_t num_states() const { return delta.size(); }
    [[nodiscard]] State run(const Word& w) const;
    [[nodiscard]] bool accepts(const Word& w) const { return accepting[run(w)]; }
};

/// Positive Boolean formula over states: true, false, variables, ∧, ∨.
class PosBool {
public:
    enum class Kind { False, True, Var, And, Or };

    static PosBool falsity() { return PosBool(Kind::False); }
    static PosBool truth() { return PosBool(Kind::True); }
    static PosBool var(State q);
    /// Simplifying constructors (absorb constants, flatten).
    static PosBool conj(std::vector<PosBool> parts);
    static PosBool disj(std::vector<PosBool> parts);
    static PosBool any_of(const std::vector<State>& states);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] State variable() const { return var_; }
    [[nodiscard]] const std::vector<PosBool>& parts() const { return parts_; }

    /// Minimal satisfying sets (disjunctive normal form without subsumed cubes).
    /// Throws BudgetExceeded if more than `limit` cubes arise on the way.
    [[nodiscard]] std::vector<StateSet> cubes(std::size_t limit = unlimited_states) const;
    [[nodiscard]] bool satisfied_by(const StateSet& s) const;
    [[nodiscard]] std::string str() const;

private:
    explicit PosBool(Kind k) : kind_(k) {}
    Kind kind_ = Kind::False;
    State var_ = 0;
    std::vector<PosBool> parts_;
};

/// Alternating Büchi automaton. The initial condition is itself a positive
/// Boolean formula; a plain set of initial states is a disjunction.
struct Aba {
    std::vector<std::string> letters;
    std::vector<std::vector<PosBool>> delta; ///< [state][letter]
    PosBool initial = PosBool::falsity();
    std::vector<bool> accepting;

    [[nodiscard]] std::size_t num_states() const { return delta.size(); }
    State add_state(bool is_accepting);
};

/// Moore machine with three-valued output.
struct MooreMachine {
    std::vector<std::string> letters;
    std::vector<std::vector<State>> delta; ///< [state][letter] -> successor
    State initial = 0;
    std::vector<Verdict> output;

    [[nodiscard]] std::size_t num_states() const { return delta.size(); }
    [[nodiscard]] State run(const Word& w, State from) const;
    [[nodiscard]] State run(const Word& w) const { return run(w, initial); }
    [[nodiscard]] Verdict output_after(const Word& w) const { return output[run(w)]; }
};

// ---------------------------------------------------------------------------
// Pipeline stages

/// result[q] = L(A(q)) is non-empty: q reaches an accepting state on a cycle.
std::vector<bool> per_state_nonempty(const Nba& a);

/// Same structure as `a`; the accepting set becomes {q | nonempty[q]}.
Nfa to_finite_acceptor(const Nba& a, const std::vector<bool>& nonempty);

/// Subset construction over reachable subsets; the empty subset is the sink.
Dfa determinize(const Nfa& n, std::size_t state_budget = unlimited_states);

/// Breakpoint construction: states (S, O) with O ⊆ S owing an accepting visit.
Nba miyano_hayashi(const Aba& a, std::size_t state_budget = unlimited_states);

/// Synchronous product with three-valued output. Throws IntegrityError if a
/// reachable state is rejecting in both components.
MooreMachine product_moore(const Dfa& pos, const Dfa& neg);

/// Minimal machine with the same input/output behaviour. States are numbered
/// in breadth-first order from the initial state (letters in order).
MooreMachine minimize_moore(const MooreMachine& m);

/// Label- and output-preserving bijection between reachable parts.
bool moore_isomorphic(const MooreMachine& m1, const MooreMachine& m2);

/// u·v^ω ∈ L(a). Throws InputError if v is empty.
bool lasso_member(const Nba& a, const Word& u, const Word& v);

// ---------------------------------------------------------------------------
// Generic NBA utilities used by the translations

Nba nba_universal(std::vector<std::string> letters);
Nba nba_empty(std::vector<std::string> letters);
/// Restricts to states that are reachable and have a non-empty language.
Nba nba_trim(const Nba& a);
/// Quotient by the coarsest bisimulation that respects acceptance, then trim.
Nba nba_reduce(const Nba& a);
Nba nba_union(const Nba& a, const Nba& b);
Nba nba_intersection(const Nba& a, const Nba& b);
/// L(a) = ∅.
bool nba_is_empty(const Nba& a);

/// Strongly connected components (Tarjan), as component index per state.
std::vector<std::size_t> strongly_connected_components(const std::vector<std::vector<State>>& successors,
                                                       std::size_t* component_count = nullptr);

} // namespace tracemon
