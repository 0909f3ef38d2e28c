#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracemon/formula.hpp"
#include "tracemon/monitor.hpp"
#include "tracemon/trace.hpp"

namespace tracemon {

/// The infinite trace of prefix·period^ω.
struct LassoTrace {
    Word prefix;
    Word period;
};

/// Outcome of a bounded evaluation; True and False are always sound.
enum class Bounded3 { True, False, Unknown };

std::string_view to_string(Bounded3 b);

/// Direct evaluator of the trace semantics on lasso traces.
///
/// Sub-results are memoized per (subformula, residue trace); residues are
/// identified exactly through their D-clique projections, so one evaluator
/// may be reused across lassos and formulas over the same alphabet.
class Evaluator {
public:
    /// `horizon`: maximal number of events an until search may consume.
    Evaluator(const TraceAlphabet& alpha, std::size_t horizon);

    /// Throws InputError if the horizon is below |prefix|+|period|, the period
    /// is empty, or letters are unknown.
    Bounded3 eval(const LassoTrace& l, const Formula& f);

    [[nodiscard]] std::size_t horizon() const { return horizon_; }
    [[nodiscard]] std::size_t memo_size() const { return memo_.size(); }

private:
    struct Node {
        Formula::Kind kind;
        Letter letter = 0;
        std::size_t left = 0, right = 0;
    };
    using Key = std::vector<Word>;

    std::size_t intern(const Formula& f);
    Key key_of(const LassoTrace& r) const;
    Bounded3 eval_node(std::size_t node, const LassoTrace& r);
    Bounded3 eval_until(const Node& n, const LassoTrace& r);
    bool psi_false_everywhere(std::size_t psi, const LassoTrace& r);

    const TraceAlphabet& alpha_;
    std::size_t horizon_;
    std::vector<LetterMask> cliques_;
    std::vector<Node> nodes_;
    std::map<std::string, std::size_t> node_ids_;
    std::map<std::pair<std::size_t, Key>, Bounded3> memo_;
};

/// T_{u·v^ω} ⊨ f with a fresh evaluator.
Bounded3 eval_bounded(const LassoTrace& l, const Formula& f, const TraceAlphabet& alpha, std::size_t horizon);

/// Residue after removing the minimal a-event, if the trace has one.
std::optional<LassoTrace> remove_minimal(const TraceAlphabet& alpha, const LassoTrace& l, Letter a);

enum class FalsifyStatus {
    Consistent,       ///< final verdict, no conclusive evaluation contradicts it
    Confirmed,        ///< ? verdict with a satisfying and a violating lasso
    InconclusiveTest, ///< ? verdict, witnesses not found within the bounds
    Counterexample,   ///< a conclusive evaluation contradicts the verdict
};

std::string_view to_string(FalsifyStatus s);

struct FalsifyResult {
    FalsifyStatus status = FalsifyStatus::Consistent;
    Verdict verdict = Verdict::Unknown;
    std::optional<Word> true_witness;  ///< a period v with T_{uv^ω} ⊨ f
    std::optional<Word> false_witness; ///< a period v with T_{uv^ω} ⊭ f
    std::size_t lassos = 0;
    std::size_t unknown = 0;
};

/// Tests the monitor's verdict after u against every lasso u·v^ω with
/// 1 ≤ |v| ≤ period_bound. Passing `evaluator` shares its memo table.
FalsifyResult falsify_verdict(const Monitor& m, const Formula& f, const TraceAlphabet& alpha, const Word& u,
                              std::size_t period_bound, std::size_t horizon, Evaluator* evaluator = nullptr);

/// For equivalent u and v, compares evaluations of u·p^ω and v·p^ω for all
/// periods 1 ≤ |p| ≤ period_bound using independent evaluators. Returns the
/// first period on which both are conclusive and differ. Throws InputError
/// if u and v are not equivalent.
std::optional<Word> lasso_class_invariance(const Formula& f, const TraceAlphabet& alpha, const Word& u,
                                           const Word& v, std::size_t horizon, std::size_t period_bound = 2);

} // namespace tracemon
