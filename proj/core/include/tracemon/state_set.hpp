#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tracemon {

/// Dynamically sized bit-set of state indices.
///
/// The representation is canonical (no trailing zero words), so equality,
/// ordering and hashing depend only on the members.
class StateSet {
public:
    StateSet() = default;
    StateSet(std::initializer_list<std::size_t> members);

    static StateSet from(const std::vector<std::size_t>& members);

    void insert(std::size_t i);
    void erase(std::size_t i);
    [[nodiscard]] bool contains(std::size_t i) const;
    [[nodiscard]] bool empty() const { return words_.empty(); }
    [[nodiscard]] std::size_t count() const;

    StateSet& operator|=(const StateSet& other);
    [[nodiscard]] StateSet minus(const StateSet& other) const;
    [[nodiscard]] bool intersects(const StateSet& other) const;
    [[nodiscard]] bool is_subset_of(const StateSet& other) const;

    /// Members in increasing order.
    [[nodiscard]] std::vector<std::size_t> members() const;

    template <class F>
    void for_each(F&& f) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                f(w * 64 + static_cast<std::size_t>(bit));
                bits &= bits - 1;
            }
        }
    }

    [[nodiscard]] std::size_t hash() const;

    friend bool operator==(const StateSet&, const StateSet&) = default;
    friend std::strong_ordering operator<=>(const StateSet& a, const StateSet& b);

private:
    void trim();
    std::vector<std::uint64_t> words_;
};

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

} // namespace tracemon
