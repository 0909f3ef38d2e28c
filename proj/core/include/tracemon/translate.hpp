#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>

#include "tracemon/automata.hpp"
#include "tracemon/formula.hpp"
#include "tracemon/trace.hpp"

namespace tracemon {

/// `Trace` interprets formulas over Mazurkiewicz traces; `Word` is classic
/// LTL over ω-words and ignores the independence relation.
enum class Backend { Trace, Word };

std::string_view to_string(Backend b);
std::optional<Backend> backend_from_string(std::string_view s);

inline constexpr std::size_t default_state_budget = 1'000'000;

struct TranslationOptions {
    /// Cap on the states of any intermediate automaton.
    std::size_t state_budget = default_state_budget;
};

/// TRACEMON_STATE_BUDGET if set to a positive integer, else `fallback`.
std::size_t state_budget_from_env(std::size_t fallback = default_state_budget);

/// Tableau construction for word LTL (⟨a⟩φ: the next letter is a, then φ).
Nba ltl_to_nba(const Formula& f, const TraceAlphabet& alpha, const TranslationOptions& opts = {});

/// Trace-aware construction: accepts exactly the linearizations of the
/// infinite traces satisfying `f`. Throws BudgetExceeded when an
/// intermediate automaton outgrows the budget.
Nba ltrl_to_nba(const Formula& f, const TraceAlphabet& alpha, const TranslationOptions& opts = {});

Nba translate(const Formula& f, const TraceAlphabet& alpha, Backend backend, const TranslationOptions& opts = {});

/// Both polarities at once; the trace backend shares the work between them.
std::pair<Nba, Nba> translate_both(const Formula& f, const TraceAlphabet& alpha, Backend backend,
                                   const TranslationOptions& opts = {});

/// A word pair differing by one swap of adjacent independent letters, of
/// which exactly the first is accepted.
struct ClosureViolation {
    Word accepted;
    Word rejected;
};

/// Searches all words up to `max_len` for a membership change under a single
/// adjacent transposition of independent letters.
std::optional<ClosureViolation> check_trace_closed_bounded(const Nfa& a, const TraceAlphabet& alpha,
                                                           std::size_t max_len);

} // namespace tracemon
