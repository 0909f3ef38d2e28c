#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracemon/state_set.hpp"

namespace tracemon {

/// Index of a letter within its TraceAlphabet (declaration order).
using Letter = std::size_t;
using Word = std::vector<Letter>;
/// Set of letters as a bit mask; alphabets are limited to 64 letters.
using LetterMask = std::uint64_t;

inline constexpr std::size_t max_letters = 64;

constexpr LetterMask letter_bit(Letter a) { return LetterMask{1} << a; }

/// A trace alphabet: ordered letters plus an irreflexive, symmetric
/// independence relation. Dependence is the complement and is exposed as a
/// predicate only.
class TraceAlphabet {
public:
    TraceAlphabet() = default;

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& letters() const { return names_; }
    [[nodiscard]] const std::string& name(Letter a) const { return names_.at(a); }

    [[nodiscard]] std::optional<Letter> find(std::string_view name) const;
    /// Throws InputError for unknown names.
    [[nodiscard]] Letter index(std::string_view name) const;

    [[nodiscard]] bool dependent(Letter x, Letter y) const { return (dependents_[x] & letter_bit(y)) != 0; }
    [[nodiscard]] bool independent(Letter x, Letter y) const { return !dependent(x, y); }
    /// Letters dependent on `a` (always contains `a`).
    [[nodiscard]] LetterMask dependents_of(Letter a) const { return dependents_[a]; }
    [[nodiscard]] LetterMask dependents_of_set(LetterMask letters) const;
    [[nodiscard]] LetterMask all_letters() const;
    [[nodiscard]] bool has_independence() const;

    /// Independent pairs with first < second, sorted.
    [[nodiscard]] std::vector<std::pair<Letter, Letter>> independent_pairs() const;

    /// Parses a word: whitespace/comma separated letter names, or a single
    /// run of one-character letter names. "", "-" and "ε" denote the empty word.
    [[nodiscard]] Word parse_word(std::string_view text) const;
    /// Concatenated names when every letter is one character, else space separated.
    [[nodiscard]] std::string format_word(const Word& w) const;

    friend bool operator==(const TraceAlphabet&, const TraceAlphabet&) = default;

private:
    friend TraceAlphabet make_alphabet(std::vector<std::string>,
                                       const std::vector<std::pair<std::string, std::string>>&);
    std::vector<std::string> names_;
    std::vector<LetterMask> dependents_;
};

/// Validates and builds an alphabet. Throws InputError on duplicate letters,
/// pairs naming unknown letters and reflexive pairs.
TraceAlphabet make_alphabet(std::vector<std::string> letters,
                            const std::vector<std::pair<std::string, std::string>>& independent_pairs);

/// Dependence by name; throws InputError for unknown letters.
bool dependent(const TraceAlphabet& alpha, std::string_view x, std::string_view y);

/// Alphabet file: `letters: a b d`, then `independent: a b` lines.
TraceAlphabet parse_alphabet(std::string_view text);
TraceAlphabet load_alphabet(const std::filesystem::path& path);
std::string format_alphabet(const TraceAlphabet& alpha);

/// All maximal sets of pairwise dependent letters, sorted by mask value.
std::vector<LetterMask> maximal_d_cliques(const TraceAlphabet& alpha);

/// Subsequence of `w` keeping exactly the letters in `keep`.
Word projection(const Word& w, LetterMask keep);

/// Mazurkiewicz equivalence via projections onto maximal D-cliques.
bool equivalent(const TraceAlphabet& alpha, const Word& u, const Word& v);

/// Event identity: the `occurrence`-th (0-based) event labelled `letter`.
struct EventId {
    Letter letter = 0;
    std::size_t occurrence = 0;
    friend auto operator<=>(const EventId&, const EventId&) = default;
};

/// A finite Mazurkiewicz trace as a labelled poset. Events are indexed in
/// (letter, occurrence) order, so equivalent words yield equal traces.
class FiniteTrace {
public:
    [[nodiscard]] std::size_t size() const { return events_.size(); }
    [[nodiscard]] const std::vector<EventId>& events() const { return events_; }
    [[nodiscard]] Letter label(std::size_t e) const { return events_[e].letter; }
    /// ↓e, including e itself.
    [[nodiscard]] const StateSet& down(std::size_t e) const { return down_[e]; }
    /// ↑e, including e itself.
    [[nodiscard]] StateSet up(std::size_t e) const;
    [[nodiscard]] bool leq(std::size_t e, std::size_t f) const { return down_[f].contains(e); }
    /// Hasse edges (lower, upper), sorted.
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& covering() const { return covering_; }
    [[nodiscard]] std::optional<std::size_t> find(EventId id) const;

    friend bool operator==(const FiniteTrace&, const FiniteTrace&) = default;

private:
    friend FiniteTrace trace_of_word(const TraceAlphabet&, const Word&);
    std::vector<EventId> events_;
    std::vector<StateSet> down_;
    std::vector<std::pair<std::size_t, std::size_t>> covering_;
};

/// A downward-closed set of events of some FiniteTrace.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(StateSet members) : members_(std::move(members)) {}

    [[nodiscard]] const StateSet& members() const { return members_; }
    [[nodiscard]] bool contains(std::size_t e) const { return members_.contains(e); }
    [[nodiscard]] std::size_t size() const { return members_.count(); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

private:
    StateSet members_;
};

bool is_downward_closed(const FiniteTrace& t, const StateSet& events);

FiniteTrace trace_of_word(const TraceAlphabet& alpha, const Word& w);

/// c —a→ c′; empty when no a-labelled event is enabled at c.
/// Throws InputError when c is not a configuration of t.
std::optional<Configuration> step(const FiniteTrace& t, const Configuration& c, Letter a);

/// The run map of `w` over `t`, present iff w ∈ lin(t).
std::optional<std::vector<Configuration>> run_map(const FiniteTrace& t, const Word& w);

inline constexpr std::size_t default_event_bound = 10;

/// All linearizations. Throws BoundExceeded when t has more than `bound` events.
std::set<Word> linearizations(const FiniteTrace& t, std::size_t bound = default_event_bound);

/// Closure of {u} under swapping adjacent independent letters. Throws
/// BoundExceeded once the class grows beyond `bound` words.
std::set<Word> equivalence_class(const TraceAlphabet& alpha, const Word& u, std::size_t bound);

/// Lexicographically least member of [u] under the alphabet's letter order.
Word foata_normal_form(const TraceAlphabet& alpha, const Word& u);

} // namespace tracemon
