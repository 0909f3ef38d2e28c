#include "tracemon/state_set.hpp"

#include <algorithm>
#include <bit>

namespace tracemon {

StateSet::StateSet(std::initializer_list<std::size_t> members)
{
    for (auto m : members)
        insert(m);
}

StateSet StateSet::from(const std::vector<std::size_t>& members)
{
    StateSet s;
    for (auto m : members)
        s.insert(m);
    return s;
}

void StateSet::insert(std::size_t i)
{
    const std::size_t w = i / 64;
    if (w >= words_.size())
        words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (i % 64);
}

void StateSet::erase(std::size_t i)
{
    const std::size_t w = i / 64;
    if (w >= words_.size())
        return;
    words_[w] &= ~(std::uint64_t{1} << (i % 64));
    trim();
}

bool StateSet::contains(std::size_t i) const
{
    const std::size_t w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1U) != 0;
}

std::size_t StateSet::count() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

StateSet& StateSet::operator|=(const StateSet& other)
{
    if (other.words_.size() > words_.size())
        words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

StateSet StateSet::minus(const StateSet& other) const
{
    StateSet r = *this;
    for (std::size_t i = 0; i < std::min(r.words_.size(), other.words_.size()); ++i)
        r.words_[i] &= ~other.words_[i];
    r.trim();
    return r;
}

bool StateSet::intersects(const StateSet& other) const
{
    const auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if ((words_[i] & other.words_[i]) != 0)
            return true;
    return false;
}

bool StateSet::is_subset_of(const StateSet& other) const
{
    if (words_.size() > other.words_.size())
        return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~other.words_[i]) != 0)
            return false;
    return true;
}

std::vector<std::size_t> StateSet::members() const
{
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
}

std::size_t StateSet::hash() const
{
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : words_)
        h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::strong_ordering operator<=>(const StateSet& a, const StateSet& b)
{
    // Lexicographic order of the sorted member lists, computed on words:
    // locate the least element d of the symmetric difference; the set that
    // lacks d is smaller iff it has no member above d.
    const auto n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t w = 0; w < n; ++w) {
        const std::uint64_t wa = w < a.words_.size() ? a.words_[w] : 0;
        const std::uint64_t wb = w < b.words_.size() ? b.words_[w] : 0;
        const std::uint64_t diff = wa ^ wb;
        if (diff == 0)
            continue;
        const std::size_t d = w * 64 + static_cast<std::size_t>(__builtin_ctzll(diff));
        const bool in_a = a.contains(d);
        const StateSet& other = in_a ? b : a;
        bool other_has_above = false;
        const std::size_t dw = d / 64;
        for (std::size_t k = dw; k < other.words_.size(); ++k) {
            std::uint64_t bits = other.words_[k];
            if (k == dw)
                bits &= (d % 64 == 63) ? 0 : (~std::uint64_t{0} << (d % 64 + 1));
            if (bits != 0) {
                other_has_above = true;
                break;
            }
        }
        if (in_a)
            return other_has_above ? std::strong_ordering::less : std::strong_ordering::greater;
        return other_has_above ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

void StateSet::trim()
{
    while (!words_.empty() && words_.back() == 0)
        words_.pop_back();
}

} // namespace tracemon
