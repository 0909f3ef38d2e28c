// Bounded evaluation of LTrL on ultimately periodic traces.
//
// A lasso u·v^ω stands for the trace of that word. Removing a finite
// configuration P yields a residue, again a lasso with period v, and
// satisfaction at P is satisfaction of the residue. Residues are compared
// through the minimal lasso form of each D-clique projection, which
// identifies equal traces exactly.
//
// ⟨a⟩ is decided exactly. Until searches the configurations of up to
// `horizon` events level by level; a configuration is safe when the left
// operand holds at every strictly smaller configuration, which is computed
// from the lower covers. Two cuts conclude a negative answer: a level where
// no configuration is safe, and a right operand that fails on every residue
// reachable from the start. Anything else beyond the horizon is unknown.

#include "tracemon/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "tracemon/errors.hpp"

namespace tracemon {

std::string_view to_string(Bounded3 b)
{
    switch (b) {
    case Bounded3::True: return "true";
    case Bounded3::False: return "false";
    case Bounded3::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(FalsifyStatus s)
{
    switch (s) {
    case FalsifyStatus::Consistent: return "consistent";
    case FalsifyStatus::Confirmed: return "confirmed";
    case FalsifyStatus::InconclusiveTest: return "inconclusive-test";
    case FalsifyStatus::Counterexample: return "counterexample";
    }
    return "unknown";
}

namespace {

Bounded3 k_not(Bounded3 a)
{
    return a == Bounded3::True ? Bounded3::False : a == Bounded3::False ? Bounded3::True : Bounded3::Unknown;
}

Bounded3 k_or(Bounded3 a, Bounded3 b)
{
    if (a == Bounded3::True || b == Bounded3::True)
        return Bounded3::True;
    if (a == Bounded3::False && b == Bounded3::False)
        return Bounded3::False;
    return Bounded3::Unknown;
}

Bounded3 k_and(Bounded3 a, Bounded3 b) { return k_not(k_or(k_not(a), k_not(b))); }

/// Minimal lasso for the same ω-word: primitive period, shortest prefix.
void normalize(Word& prefix, Word& period)
{
    const std::size_t n = period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            periodic = period[i] == period[i - d];
        if (periodic) {
            period.resize(d);
            break;
        }
    }
    while (!prefix.empty() && prefix.back() == period.back()) {
        prefix.pop_back();
        std::rotate(period.begin(), period.end() - 1, period.end());
    }
}

std::vector<Word> words_of_length(std::size_t k, std::size_t len)
{
    std::vector<Word> out;
    Word w(len, 0);
    while (true) {
        out.push_back(w);
        std::size_t pos = len;
        while (pos > 0 && w[pos - 1] + 1 == k)
            w[--pos] = 0;
        if (pos == 0)
            return out;
        ++w[pos - 1];
    }
}

} // namespace

std::optional<LassoTrace> remove_minimal(const TraceAlphabet& alpha, const LassoTrace& l, Letter a)
{
    const std::size_t total = l.prefix.size() + l.period.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Letter x = i < l.prefix.size() ? l.prefix[i] : l.period[i - l.prefix.size()];
        if (!alpha.dependent(a, x))
            continue;
        if (x != a)
            return std::nullopt;
        LassoTrace r;
        r.period = l.period;
        r.prefix = l.prefix;
        if (i >= l.prefix.size())
            r.prefix.insert(r.prefix.end(), l.period.begin(), l.period.end());
        r.prefix.erase(r.prefix.begin() + static_cast<std::ptrdiff_t>(i));
        normalize(r.prefix, r.period);
        return r;
    }
    return std::nullopt;
}

Evaluator::Evaluator(const TraceAlphabet& alpha, std::size_t horizon)
    : alpha_(alpha), horizon_(horizon), cliques_(maximal_d_cliques(alpha))
{
}

std::size_t Evaluator::intern(const Formula& f)
{
    const std::string key = render(f);
    if (auto it = node_ids_.find(key); it != node_ids_.end())
        return it->second;
    Node n{f.kind()};
    switch (f.kind()) {
    case Formula::Kind::True:
        break;
    case Formula::Kind::Not:
        n.left = intern(f.operand());
        break;
    case Formula::Kind::Next:
        n.letter = alpha_.index(f.letter());
        n.left = intern(f.operand());
        break;
    case Formula::Kind::Or:
    case Formula::Kind::Until:
        n.left = intern(f.left());
        n.right = intern(f.right());
        break;
    }
    nodes_.push_back(n);
    node_ids_.emplace(key, nodes_.size() - 1);
    return nodes_.size() - 1;
}

Evaluator::Key Evaluator::key_of(const LassoTrace& r) const
{
    Key key;
    key.reserve(2 * cliques_.size());
    for (LetterMask p : cliques_) {
        Word pre = projection(r.prefix, p);
        Word per = projection(r.period, p);
        if (!per.empty())
            normalize(pre, per);
        key.push_back(std::move(pre));
        key.push_back(std::move(per));
    }
    return key;
}

Bounded3 Evaluator::eval(const LassoTrace& l, const Formula& f)
{
    if (l.period.empty())
        throw InputError("lasso period must be non-empty");
    for (const Word* w : {&l.prefix, &l.period})
        for (Letter a : *w)
            if (a >= alpha_.size())
                throw InputError("lasso uses a letter outside the alphabet");
    if (horizon_ < l.prefix.size() + l.period.size())
        throw InputError("horizon " + std::to_string(horizon_) + " is shorter than the lasso (" +
                         std::to_string(l.prefix.size() + l.period.size()) + " letters)");
    require_letters(f, alpha_);
    const std::size_t node = intern(f);
    LassoTrace r = l;
    normalize(r.prefix, r.period);
    return eval_node(node, r);
}

Bounded3 Evaluator::eval_node(std::size_t node, const LassoTrace& r)
{
    auto memo_key = std::make_pair(node, key_of(r));
    if (auto it = memo_.find(memo_key); it != memo_.end())
        return it->second;
    const Node n = nodes_[node];
    Bounded3 result = Bounded3::Unknown;
    switch (n.kind) {
    case Formula::Kind::True:
        result = Bounded3::True;
        break;
    case Formula::Kind::Not:
        result = k_not(eval_node(n.left, r));
        break;
    case Formula::Kind::Or:
        result = eval_node(n.left, r);
        if (result != Bounded3::True)
            result = k_or(result, eval_node(n.right, r));
        break;
    case Formula::Kind::Next: {
        const auto residue = remove_minimal(alpha_, r, n.letter);
        result = residue ? eval_node(n.left, *residue) : Bounded3::False;
        break;
    }
    case Formula::Kind::Until:
        result = eval_until(n, r);
        break;
    }
    memo_.emplace(std::move(memo_key), result);
    return result;
}

Bounded3 Evaluator::eval_until(const Node& n, const LassoTrace& r)
{
    const std::size_t k = alpha_.size();
    const std::size_t h = horizon_;

    // Materialize enough of the word to contain every configuration of ≤ h events.
    Word w = r.prefix;
    for (std::size_t i = 0; i <= h; ++i)
        w.insert(w.end(), r.period.begin(), r.period.end());
    std::vector<std::vector<std::size_t>> occ(k);
    std::vector<std::vector<std::size_t>> before(k, std::vector<std::size_t>(w.size() + 1, 0));
    for (std::size_t i = 0; i < w.size(); ++i) {
        occ[w[i]].push_back(i);
        for (Letter b = 0; b < k; ++b)
            before[b][i + 1] = before[b][i] + (w[i] == b ? 1 : 0);
    }

    using Counts = std::vector<std::size_t>;
    auto residue = [&](const Counts& c) {
        LassoTrace res;
        res.period = r.period;
        Counts seen(k, 0);
        for (Letter x : w) {
            if (seen[x] < c[x]) {
                ++seen[x];
                continue;
            }
            res.prefix.push_back(x);
        }
        normalize(res.prefix, res.period);
        return res;
    };
    // The next a-event is enabled at c.
    auto enabled = [&](const Counts& c, Letter a) {
        if (c[a] >= occ[a].size())
            return false;
        const std::size_t p = occ[a][c[a]];
        for (Letter b = 0; b < k; ++b)
            if (b != a && alpha_.dependent(a, b) && before[b][p] > c[b])
                return false;
        return true;
    };
    // The last a-event of c is maximal in c.
    auto removable = [&](const Counts& c, Letter a) {
        if (c[a] == 0)
            return false;
        const std::size_t p = occ[a][c[a] - 1];
        for (Letter b = 0; b < k; ++b)
            if (b != a && alpha_.dependent(a, b) && c[b] > 0 && occ[b][c[b] - 1] > p)
                return false;
        return true;
    };

    std::map<Counts, Bounded3> level{{Counts(k, 0), Bounded3::True}};
    Bounded3 result = Bounded3::False;
    bool complete = false;
    for (std::size_t depth = 0;; ++depth) {
        bool any_safe = false;
        for (const auto& [c, safe] : level) {
            if (safe == Bounded3::False)
                continue;
            any_safe = true;
            result = k_or(result, k_and(safe, eval_node(n.right, residue(c))));
            if (result == Bounded3::True)
                return result;
        }
        if (!any_safe) {
            complete = true;
            break;
        }
        if (depth == h)
            break;
        std::map<Counts, Bounded3> phi_at;
        auto phi = [&](const Counts& d) {
            auto it = phi_at.find(d);
            if (it == phi_at.end())
                it = phi_at.emplace(d, eval_node(n.left, residue(d))).first;
            return it->second;
        };
        std::map<Counts, Bounded3> next;
        for (const auto& [c, safe] : level) {
            for (Letter a = 0; a < k; ++a) {
                if (!enabled(c, a))
                    continue;
                Counts up = c;
                ++up[a];
                if (next.count(up) != 0)
                    continue;
                Bounded3 s = Bounded3::True;
                for (Letter b = 0; b < k && s != Bounded3::False; ++b) {
                    if (!removable(up, b))
                        continue;
                    Counts d = up;
                    --d[b];
                    const Bounded3 ds = level.at(d);
                    s = k_and(s, ds == Bounded3::False ? ds : k_and(ds, phi(d)));
                }
                next.emplace(std::move(up), s);
            }
        }
        level = std::move(next);
    }
    if (complete || result == Bounded3::True)
        return result;
    return psi_false_everywhere(n.right, r) ? Bounded3::False : Bounded3::Unknown;
}

bool Evaluator::psi_false_everywhere(std::size_t psi, const LassoTrace& r)
{
    constexpr std::size_t residue_limit = 4096;
    std::set<Key> seen{key_of(r)};
    std::deque<LassoTrace> work{r};
    while (!work.empty()) {
        const LassoTrace cur = std::move(work.front());
        work.pop_front();
        if (eval_node(psi, cur) != Bounded3::False)
            return false;
        for (Letter a = 0; a < alpha_.size(); ++a) {
            auto next = remove_minimal(alpha_, cur, a);
            if (next && seen.insert(key_of(*next)).second) {
                if (seen.size() > residue_limit)
                    return false;
                work.push_back(std::move(*next));
            }
        }
    }
    return true;
}

Bounded3 eval_bounded(const LassoTrace& l, const Formula& f, const TraceAlphabet& alpha, std::size_t horizon)
{
    Evaluator e(alpha, horizon);
    return e.eval(l, f);
}

FalsifyResult falsify_verdict(const Monitor& m, const Formula& f, const TraceAlphabet& alpha, const Word& u,
                              std::size_t period_bound, std::size_t horizon, Evaluator* evaluator)
{
    std::optional<Evaluator> own;
    if (evaluator == nullptr)
        evaluator = &own.emplace(alpha, horizon);
    FalsifyResult res;
    res.verdict = verdict_at(m, u);
    for (std::size_t len = 1; len <= period_bound; ++len) {
        for (const Word& v : words_of_length(alpha.size(), len)) {
            const Bounded3 b = evaluator->eval({u, v}, f);
            ++res.lassos;
            if (b == Bounded3::Unknown) {
                ++res.unknown;
                continue;
            }
            if (b == Bounded3::True && !res.true_witness)
                res.true_witness = v;
            if (b == Bounded3::False && !res.false_witness)
                res.false_witness = v;
            if ((res.verdict == Verdict::Top && b == Bounded3::False) ||
                (res.verdict == Verdict::Bottom && b == Bounded3::True)) {
                res.status = FalsifyStatus::Counterexample;
                return res;
            }
            if (res.verdict == Verdict::Unknown && res.true_witness && res.false_witness) {
                res.status = FalsifyStatus::Confirmed;
                return res;
            }
        }
    }
    res.status = res.verdict == Verdict::Unknown ? FalsifyStatus::InconclusiveTest : FalsifyStatus::Consistent;
    return res;
}

std::optional<Word> lasso_class_invariance(const Formula& f, const TraceAlphabet& alpha, const Word& u,
                                           const Word& v, std::size_t horizon, std::size_t period_bound)
{
    if (!equivalent(alpha, u, v))
        throw InputError("words " + alpha.format_word(u) + " and " + alpha.format_word(v) + " are not equivalent");
    Evaluator left(alpha, horizon), right(alpha, horizon);
    for (std::size_t len = 1; len <= period_bound; ++len)
        for (const Word& p : words_of_length(alpha.size(), len)) {
            const Bounded3 x = left.eval({u, p}, f);
            const Bounded3 y = right.eval({v, p}, f);
            if (x != Bounded3::Unknown && y != Bounded3::Unknown && x != y)
                return p;
        }
    return std::nullopt;
}

} // namespace tracemon
