#include "tracemon/trace.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tracemon/errors.hpp"

namespace tracemon {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_ws(std::string_view s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ' ' || ch == '\t' || ch == ',' || ch == '\r' || ch == '\n') {
            if (!cur.empty())
                out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty())
        out.push_back(std::move(cur));
    return out;
}

bool valid_name(std::string_view s)
{
    if (s.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0]))
        return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

} // namespace

std::optional<Letter> TraceAlphabet::find(std::string_view name) const
{
    for (Letter a = 0; a < names_.size(); ++a)
        if (names_[a] == name)
            return a;
    return std::nullopt;
}

Letter TraceAlphabet::index(std::string_view name) const
{
    if (auto a = find(name))
        return *a;
    throw InputError("unknown letter " + std::string(name));
}

LetterMask TraceAlphabet::dependents_of_set(LetterMask letters) const
{
    LetterMask out = 0;
    for (Letter a = 0; a < size(); ++a)
        if ((letters & letter_bit(a)) != 0)
            out |= dependents_[a];
    return out;
}

LetterMask TraceAlphabet::all_letters() const
{
    return size() == 64 ? ~LetterMask{0} : (letter_bit(size()) - 1);
}

bool TraceAlphabet::has_independence() const
{
    return std::any_of(dependents_.begin(), dependents_.end(), [&](LetterMask m) { return m != all_letters(); });
}

std::vector<std::pair<Letter, Letter>> TraceAlphabet::independent_pairs() const
{
    std::vector<std::pair<Letter, Letter>> out;
    for (Letter a = 0; a < size(); ++a)
        for (Letter b = a + 1; b < size(); ++b)
            if (independent(a, b))
                out.emplace_back(a, b);
    return out;
}

Word TraceAlphabet::parse_word(std::string_view text) const
{
    text = trim(text);
    if (text.empty() || text == "-" || text == "ε")
        return {};
    const auto tokens = split_ws(text);
    Word w;
    if (tokens.size() == 1 && !find(tokens[0])) {
        const bool single_chars = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
        if (single_chars) {
            for (char ch : tokens[0])
                w.push_back(index(std::string_view(&ch, 1)));
            return w;
        }
    }
    for (const auto& tok : tokens)
        w.push_back(index(tok));
    return w;
}

std::string TraceAlphabet::format_word(const Word& w) const
{
    const bool single_chars = std::all_of(names_.begin(), names_.end(), [](const std::string& n) { return n.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single_chars && i > 0)
            out += ' ';
        out += name(w[i]);
    }
    return out;
}

TraceAlphabet make_alphabet(std::vector<std::string> letters,
                            const std::vector<std::pair<std::string, std::string>>& independent_pairs)
{
    if (letters.empty())
        throw InputError("alphabet has no letters");
    if (letters.size() > max_letters)
        throw InputError("alphabet has more than 64 letters");
    TraceAlphabet alpha;
    for (auto& l : letters) {
        if (!valid_name(l))
            throw InputError("invalid letter name '" + l + "'");
        if (std::find(alpha.names_.begin(), alpha.names_.end(), l) != alpha.names_.end())
            throw InputError("duplicate letter " + l);
        alpha.names_.push_back(std::move(l));
    }
    alpha.dependents_.assign(alpha.size(), alpha.all_letters());
    for (const auto& [x, y] : independent_pairs) {
        const auto a = alpha.find(x);
        const auto b = alpha.find(y);
        if (!a)
            throw InputError("independence pair mentions unknown letter " + x);
        if (!b)
            throw InputError("independence pair mentions unknown letter " + y);
        if (*a == *b)
            throw InputError("reflexive pair (" + x + "," + y + ")");
        alpha.dependents_[*a] &= ~letter_bit(*b);
        alpha.dependents_[*b] &= ~letter_bit(*a);
    }
    return alpha;
}

bool dependent(const TraceAlphabet& alpha, std::string_view x, std::string_view y)
{
    return alpha.dependent(alpha.index(x), alpha.index(y));
}

TraceAlphabet parse_alphabet(std::string_view text)
{
    std::vector<std::string> letters;
    std::vector<std::pair<std::string, std::string>> pairs;
    bool have_letters = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw InputError("alphabet line " + std::to_string(line_no) + ": expected 'key: value'");
        const auto key = trim(line.substr(0, colon));
        const auto names = split_ws(line.substr(colon + 1));
        if (key == "letters") {
            if (have_letters)
                throw InputError("alphabet line " + std::to_string(line_no) + ": duplicate letters line");
            if (!pairs.empty())
                throw InputError("alphabet line " + std::to_string(line_no) + ": letters must come first");
            letters = names;
            have_letters = true;
        } else if (key == "independent") {
            if (!have_letters)
                throw InputError("alphabet line " + std::to_string(line_no) + ": letters must come first");
            if (names.size() != 2)
                throw InputError("alphabet line " + std::to_string(line_no) + ": independent takes exactly two letters");
            pairs.emplace_back(names[0], names[1]);
        } else {
            throw InputError("alphabet line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    if (!have_letters)
        throw InputError("alphabet: missing 'letters:' line");
    return make_alphabet(std::move(letters), pairs);
}

TraceAlphabet load_alphabet(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read alphabet file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_alphabet(buf.str());
}

std::string format_alphabet(const TraceAlphabet& alpha)
{
    std::string out = "letters:";
    for (const auto& n : alpha.letters())
        out += " " + n;
    out += "\n";
    for (const auto& [a, b] : alpha.independent_pairs())
        out += "independent: " + alpha.name(a) + " " + alpha.name(b) + "\n";
    return out;
}

std::vector<LetterMask> maximal_d_cliques(const TraceAlphabet& alpha)
{
    // Bron–Kerbosch with pivoting on the dependence graph.
    std::vector<LetterMask> cliques;
    const auto n = alpha.size();
    auto neighbours = [&](Letter v) { return alpha.dependents_of(v) & ~letter_bit(v); };
    auto recurse = [&](auto&& self, LetterMask r, LetterMask p, LetterMask x) -> void {
        if (p == 0 && x == 0) {
            cliques.push_back(r);
            return;
        }
        Letter pivot = 0;
        for (Letter v = 0; v < n; ++v)
            if (((p | x) & letter_bit(v)) != 0) {
                pivot = v;
                break;
            }
        LetterMask candidates = p & ~neighbours(pivot);
        for (Letter v = 0; v < n; ++v) {
            if ((candidates & letter_bit(v)) == 0)
                continue;
            self(self, r | letter_bit(v), p & neighbours(v), x & neighbours(v));
            p &= ~letter_bit(v);
            x |= letter_bit(v);
        }
    };
    recurse(recurse, 0, alpha.all_letters(), 0);
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

Word projection(const Word& w, LetterMask keep)
{
    Word out;
    for (Letter a : w)
        if ((keep & letter_bit(a)) != 0)
            out.push_back(a);
    return out;
}

bool equivalent(const TraceAlphabet& alpha, const Word& u, const Word& v)
{
    for (Letter a : u)
        if (a >= alpha.size())
            throw InputError("word contains a letter outside the alphabet");
    for (Letter a : v)
        if (a >= alpha.size())
            throw InputError("word contains a letter outside the alphabet");
    if (u.size() != v.size())
        return false;
    for (LetterMask p : maximal_d_cliques(alpha))
        if (projection(u, p) != projection(v, p))
            return false;
    return true;
}

StateSet FiniteTrace::up(std::size_t e) const
{
    StateSet out;
    for (std::size_t f = 0; f < size(); ++f)
        if (down_[f].contains(e))
            out.insert(f);
    return out;
}

std::optional<std::size_t> FiniteTrace::find(EventId id) const
{
    const auto it = std::lower_bound(events_.begin(), events_.end(), id);
    if (it == events_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - events_.begin());
}

FiniteTrace trace_of_word(const TraceAlphabet& alpha, const Word& w)
{
    const auto n = w.size();
    // Event identities in word order.
    std::vector<EventId> ids(n);
    std::vector<std::size_t> seen(alpha.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (w[i] >= alpha.size())
            throw InputError("word contains a letter outside the alphabet");
        ids[i] = EventId{w[i], seen[w[i]]++};
    }
    std::vector<EventId> sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> index_of(n);
    for (std::size_t i = 0; i < n; ++i)
        index_of[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), ids[i]) - sorted.begin());

    FiniteTrace t;
    t.events_ = std::move(sorted);
    t.down_.assign(n, StateSet{});
    for (std::size_t i = 0; i < n; ++i) {
        StateSet d{index_of[i]};
        for (std::size_t j = 0; j < i; ++j)
            if (alpha.dependent(w[j], w[i]))
                d |= t.down_[index_of[j]];
        t.down_[index_of[i]] = std::move(d);
    }
    // Covering edges: e < f with nothing strictly between.
    for (std::size_t f = 0; f < n; ++f) {
        const StateSet below = t.down_[f].minus(StateSet{f});
        below.for_each([&](std::size_t e) {
            bool covered = true;
            below.for_each([&](std::size_t g) {
                if (g != e && t.down_[g].contains(e))
                    covered = false;
            });
            if (covered)
                t.covering_.emplace_back(e, f);
        });
    }
    std::sort(t.covering_.begin(), t.covering_.end());
    return t;
}

bool is_downward_closed(const FiniteTrace& t, const StateSet& events)
{
    bool ok = true;
    events.for_each([&](std::size_t e) {
        if (e >= t.size() || !t.down(e).is_subset_of(events))
            ok = false;
    });
    return ok;
}

std::optional<Configuration> step(const FiniteTrace& t, const Configuration& c, Letter a)
{
    if (!is_downward_closed(t, c.members()))
        throw InputError("configuration is not downward closed");
    // a-labelled events form a chain; only the first one outside c can be enabled.
    for (std::size_t e = 0; e < t.size(); ++e) {
        if (t.label(e) != a || c.contains(e))
            continue;
        StateSet next = c.members();
        next.insert(e);
        if (t.down(e).is_subset_of(next))
            return Configuration{std::move(next)};
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<std::vector<Configuration>> run_map(const FiniteTrace& t, const Word& w)
{
    std::vector<Configuration> rho{Configuration{}};
    for (Letter a : w) {
        auto next = step(t, rho.back(), a);
        if (!next)
            return std::nullopt;
        rho.push_back(std::move(*next));
    }
    if (rho.back().size() != t.size())
        return std::nullopt;
    return rho;
}

std::set<Word> linearizations(const FiniteTrace& t, std::size_t bound)
{
    if (t.size() > bound)
        throw BoundExceeded("trace has " + std::to_string(t.size()) + " events, bound is " + std::to_string(bound));
    std::set<Word> out;
    Word prefix;
    StateSet done;
    auto recurse = [&](auto&& self) -> void {
        if (prefix.size() == t.size()) {
            out.insert(prefix);
            return;
        }
        for (std::size_t e = 0; e < t.size(); ++e) {
            if (done.contains(e))
                continue;
            StateSet with = done;
            with.insert(e);
            if (!t.down(e).is_subset_of(with))
                continue;
            done.insert(e);
            prefix.push_back(t.label(e));
            self(self);
            prefix.pop_back();
            done.erase(e);
        }
    };
    recurse(recurse);
    return out;
}

std::set<Word> equivalence_class(const TraceAlphabet& alpha, const Word& u, std::size_t bound)
{
    std::set<Word> seen{u};
    std::vector<Word> frontier{u};
    while (!frontier.empty()) {
        Word w = std::move(frontier.back());
        frontier.pop_back();
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i] == w[i + 1] || alpha.dependent(w[i], w[i + 1]))
                continue;
            Word swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            if (seen.insert(swapped).second) {
                if (seen.size() > bound)
                    throw BoundExceeded("equivalence class exceeds bound " + std::to_string(bound));
                frontier.push_back(std::move(swapped));
            }
        }
    }
    return seen;
}

Word foata_normal_form(const TraceAlphabet& alpha, const Word& u)
{
    // Greedy: repeatedly emit the least letter whose first remaining
    // occurrence is a minimal event of the residual trace.
    std::vector<bool> used(u.size(), false);
    Word out;
    out.reserve(u.size());
    while (out.size() < u.size()) {
        std::optional<std::size_t> best;
        LetterMask blocked = 0;
        LetterMask considered = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (used[i])
                continue;
            const Letter a = u[i];
            if ((considered & letter_bit(a)) == 0 && (blocked & letter_bit(a)) == 0) {
                if (!best || a < u[*best])
                    best = i;
            }
            considered |= letter_bit(a);
            blocked |= alpha.dependents_of(a);
        }
        used[*best] = true;
        out.push_back(u[*best]);
    }
    return out;
}

} // namespace tracemon
