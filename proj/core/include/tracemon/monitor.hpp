#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tracemon/automata.hpp"
#include "tracemon/formula.hpp"
#include "tracemon/trace.hpp"
#include "tracemon/translate.hpp"

namespace tracemon {

/// State counts of every pipeline stage, for both polarities.
struct StageStats {
    std::size_t formula_size = 0;
    std::size_t until_depth = 0;
    std::size_t nba_pos = 0, nba_neg = 0;
    std::size_t nfa_pos = 0, nfa_neg = 0;
    std::size_t dfa_pos = 0, dfa_neg = 0;
    std::size_t product = 0;
    std::size_t fsm = 0;
};

/// Every intermediate stage of monitor synthesis.
struct Pipeline {
    Nba nba_pos, nba_neg;
    std::vector<bool> nonempty_pos, nonempty_neg;
    Nfa nfa_pos, nfa_neg;
    Dfa dfa_pos, dfa_neg;
    MooreMachine product;
    MooreMachine fsm;
    StageStats stats;
};

Pipeline build_pipeline(const Formula& f, const TraceAlphabet& alpha, Backend backend,
                        const TranslationOptions& opts = {});

/// A minimized three-valued monitor.
struct Monitor {
    MooreMachine machine;
    std::string formula; ///< rendered source formula; empty when loaded from a file
    Backend backend = Backend::Trace;
    StageStats stats;

    [[nodiscard]] const std::vector<std::string>& letters() const { return machine.letters; }
    /// Throws InputError for names outside the monitor's alphabet.
    [[nodiscard]] Letter letter_index(std::string_view name) const;
};

/// Wraps the pipeline's minimized machine. Throws IntegrityError if a ⊤ or
/// ⊥ state has a successor with another verdict.
Monitor make_monitor(const Pipeline& p, const Formula& f, Backend backend);

/// Runs the full pipeline for f and ¬f, then product and minimization.
Monitor build_monitor(const Formula& f, const TraceAlphabet& alpha, Backend backend,
                      const TranslationOptions& opts = {});

/// ⊤ and ⊥ states only lead to states with the same output.
bool has_final_sinks(const MooreMachine& m);

/// Verdict after reading u from the initial state. Throws InputError on
/// letters outside the monitor's alphabet.
Verdict verdict_at(const Monitor& m, const Word& u);

/// Initial verdict followed by one verdict per consumed letter.
struct VerdictTrace {
    Verdict initial = Verdict::Unknown;
    std::vector<std::pair<Letter, Verdict>> steps;
};

VerdictTrace run_word(const Monitor& m, const Word& u);

/// An online run over one event stream. Sessions over the same monitor are
/// independent of each other.
class MonitorSession {
public:
    explicit MonitorSession(const Monitor& m) : monitor_(&m), state_(m.machine.initial) {}

    [[nodiscard]] Verdict verdict() const { return monitor_->machine.output[state_]; }
    /// Advances by one event. On an unknown letter throws InputError and
    /// leaves the session unchanged.
    Verdict step(Letter a);
    Verdict step(std::string_view letter);
    void reset() { state_ = monitor_->machine.initial; }
    [[nodiscard]] State state() const { return state_; }

private:
    const Monitor* monitor_;
    State state_;
};

/// First member of [u] whose verdict differs from u's, if any. Throws
/// BoundExceeded when the class has more than `bound` members.
std::optional<Word> verdict_invariance_check(const Monitor& m, const TraceAlphabet& alpha, const Word& u,
                                             std::size_t bound);

/// Line-oriented text format (`monitor v1`).
std::string serialize(const Monitor& m);
/// Throws InputError with a line number on malformed input.
Monitor deserialize(std::string_view text);

} // namespace tracemon
