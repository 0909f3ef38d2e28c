#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tracemon/errors.hpp"

namespace tracemon {

class TraceAlphabet;

/// Immutable LTrL/LTL formula over action letters.
///
/// The core tree uses five constructors: tt, negation, disjunction,
/// per-action next `<a>` and until. The derived forms (ff, &, F, G) are
/// built from these and never appear as nodes.
class Formula {
public:
    enum class Kind { True, Not, Or, Next, Until };

    static Formula tt();
    static Formula negation(Formula f);
    static Formula disjunction(Formula l, Formula r);
    static Formula next(std::string letter, Formula f);
    static Formula until(Formula l, Formula r);

    static Formula ff();
    static Formula conjunction(Formula l, Formula r);
    static Formula eventually(Formula f);
    static Formula globally(Formula f);

    [[nodiscard]] Kind kind() const { return node_->kind; }
    /// Operand of Not and Next.
    [[nodiscard]] const Formula& operand() const;
    /// Left operand of Or and Until.
    [[nodiscard]] const Formula& left() const;
    /// Right operand of Or and Until.
    [[nodiscard]] const Formula& right() const;
    /// Letter of Next.
    [[nodiscard]] const std::string& letter() const;

    /// Number of nodes in the core tree.
    [[nodiscard]] std::size_t size() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Kind kind;
        std::string letter;
        std::vector<Formula> kids;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class FormulaSyntaxError : public InputError {
public:
    FormulaSyntaxError(const std::string& message, std::size_t position);
    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar (tightest first): unary {!, <a>, F, G} > U (right assoc) > & > |.
Formula parse_formula(std::string_view text);

/// Fully parenthesised binary operators; parse_formula(render(f)) == f.
std::string render(const Formula& f);

/// Letters used by `f` that are not in `alpha` (sorted, unique). Empty means ok.
std::vector<std::string> validate_letters(const Formula& f, const TraceAlphabet& alpha);

/// Throws InputError naming the first unknown letter.
void require_letters(const Formula& f, const TraceAlphabet& alpha);

/// Maximum number of Until nodes on a root-to-leaf path.
std::size_t until_nesting_depth(const Formula& f);

} // namespace tracemon
