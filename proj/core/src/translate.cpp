#include "tracemon/translate.hpp"

#include <charconv>
#include <cstdlib>

namespace tracemon {

std::string_view to_string(Backend b)
{
    return b == Backend::Trace ? "trace" : "word";
}

std::optional<Backend> backend_from_string(std::string_view s)
{
    if (s == "trace")
        return Backend::Trace;
    if (s == "word")
        return Backend::Word;
    return std::nullopt;
}

std::size_t state_budget_from_env(std::size_t fallback)
{
    const char* raw = std::getenv("TRACEMON_STATE_BUDGET");
    if (raw == nullptr)
        return fallback;
    const std::string_view text(raw);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
        return fallback;
    return value;
}

Nba translate(const Formula& f, const TraceAlphabet& alpha, Backend backend, const TranslationOptions& opts)
{
    return backend == Backend::Word ? ltl_to_nba(f, alpha, opts) : ltrl_to_nba(f, alpha, opts);
}

} // namespace tracemon
