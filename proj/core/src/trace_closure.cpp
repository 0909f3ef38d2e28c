#include "tracemon/translate.hpp"

namespace tracemon {

std::optional<ClosureViolation> check_trace_closed_bounded(const Nfa& a, const TraceAlphabet& alpha,
                                                           std::size_t max_len)
{
    if (!alpha.has_independence() || alpha.size() == 0)
        return std::nullopt;
    Word w;
    // Words in length-lexicographic order.
    for (std::size_t len = 2; len <= max_len; ++len) {
        w.assign(len, 0);
        while (true) {
            const bool in = a.accepts(w);
            for (std::size_t i = 0; i + 1 < len; ++i) {
                if (w[i] == w[i + 1] || alpha.dependent(w[i], w[i + 1]))
                    continue;
                Word swapped = w;
                std::swap(swapped[i], swapped[i + 1]);
                if (a.accepts(swapped) != in)
                    return in ? ClosureViolation{w, swapped} : ClosureViolation{swapped, w};
            }
            std::size_t pos = len;
            while (pos > 0 && w[pos - 1] + 1 == alpha.size())
                w[--pos] = 0;
            if (pos == 0)
                break;
            ++w[pos - 1];
        }
    }
    return std::nullopt;
}

} // namespace tracemon
