#pragma once

#include <cstddef>
#include <functional>
#include <iterator>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qxsort/counting.hpp"

namespace qxsort {
namespace detail {

// Block boundaries of the insertion order: t_k = (2^{k+1} + (-1)^k) / 3.
constexpr std::size_t mi_block_end(unsigned k) {
    const std::size_t p = std::size_t{1} << (k + 1);
    return k % 2 == 0 ? (p + 1) / 3 : (p - 1) / 3;
}

// Ford-Johnson on an index array; returns the indices in sorted order.
template <class It, class Less>
class MergeInsertion {
public:
    MergeInsertion(It first, Ops<Less>& ops, bool simplified)
        : first_(first), ops_(ops), simplified_(simplified) {}

    std::vector<std::size_t> sort(const std::vector<std::size_t>& items) {
        const std::size_t n = items.size();
        if (n < 2) return items;
        const std::size_t h = n / 2;

        std::vector<std::size_t> winners(h);
        std::unordered_map<std::size_t, std::size_t> loser_of;
        loser_of.reserve(h);
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t x = items[i], y = items[i + h];
            if (ops_.less(first_[x], first_[y])) std::swap(x, y);
            winners[i] = x;
            loser_of[x] = y;
        }
        const std::vector<std::size_t> a = sort(winners);

        const std::size_t m = n - h;  // number of b's, b_0 .. b_{m-1}
        std::vector<std::size_t> b(m);
        for (std::size_t j = 0; j < h; ++j) b[j] = loser_of[a[j]];
        if (n % 2 == 1) b[h] = items[n - 1];

        std::vector<std::size_t> chain;
        chain.reserve(n);
        chain.push_back(b[0]);
        chain.insert(chain.end(), a.begin(), a.end());

        for (unsigned k = 2;; ++k) {
            const std::size_t lo = mi_block_end(k - 1);
            if (lo > m - 1) break;
            const std::size_t block_top = mi_block_end(k) - 1;
            const bool full = block_top <= m - 1;
            const std::size_t hi = full ? block_top : m - 1;
            std::size_t fixed_range = 0;
            if (simplified_) fixed_range = full ? (std::size_t{1} << k) - 1 : bound(a, chain, hi, h);
            for (std::size_t i = hi + 1; i-- > lo;) {
                const std::size_t range = simplified_ ? fixed_range : bound(a, chain, i, h);
                const std::size_t pos = search(chain, range, b[i]);
                chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(pos), b[i]);
            }
        }
        return chain;
    }

private:
    // Number of chain elements b_i has to be compared against.
    std::size_t bound(const std::vector<std::size_t>& a, const std::vector<std::size_t>& chain,
                      std::size_t i, std::size_t h) const {
        if (i >= h) return chain.size();
        for (std::size_t p = 0; p < chain.size(); ++p)
            if (chain[p] == a[i]) return p;
        return chain.size();
    }

    // Binary search over positions [0, range]; on an odd number of
    // positions the lower part gets the smaller half.
    std::size_t search(const std::vector<std::size_t>& chain, std::size_t range, std::size_t x) {
        std::size_t lo = 0, hi = range;
        while (lo < hi) {
            const std::size_t s = hi - lo + 1;
            const std::size_t mid = lo + s / 2 - 1;
            if (ops_.less(first_[x], first_[chain[mid]]))
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    It first_;
    Ops<Less>& ops_;
    bool simplified_;
};

template <class It, class Less>
void merge_insertion(It first, It last, Ops<Less>& ops, bool simplified) {
    const auto n = static_cast<std::size_t>(last - first);
    if (n < 2) return;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    MergeInsertion<It, Less> mi(first, ops, simplified);
    const auto order = mi.sort(idx);

    using T = typename std::iterator_traits<It>::value_type;
    std::vector<T> tmp;
    tmp.reserve(n);
    for (std::size_t i : order) tmp.push_back(std::move(first[i]));
    std::move(tmp.begin(), tmp.end(), first);
    ops.count_moves(2 * n);
}

}  // namespace detail

template <std::random_access_iterator It, class Less = std::less<>>
void merge_insertionsort(It first, It last, CountingContext& ctx, bool simplified = false,
                         Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::merge_insertion(first, last, ops, simplified);
}

}  // namespace qxsort
