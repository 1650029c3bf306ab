#pragma once

#include <algorithm>
#include <functional>
#include <iterator>
#include <utility>

#include "qxsort/counting.hpp"

namespace qxsort {
namespace detail {

template <class It, class Less>
void straight_insertion(It first, It last, Ops<Less>& ops) {
    const auto n = last - first;
    for (decltype(last - first) i = 1; i < n; ++i) {
        auto x = std::move(first[i]);
        auto j = i;
        while (j > 0 && ops.less(x, first[j - 1])) {
            first[j] = std::move(first[j - 1]);
            --j;
        }
        first[j] = std::move(x);
        ops.count_moves(static_cast<std::uint64_t>(i - j) + 2);
    }
}

// Position in [lo, hi] where x belongs; midpoint probe floor((lo+hi)/2).
template <class It, class T, class Less>
auto upper_position(It first, std::ptrdiff_t lo, std::ptrdiff_t hi, const T& x, Ops<Less>& ops) {
    while (lo < hi) {
        const auto mid = lo + (hi - lo) / 2;
        if (ops.less(x, first[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

template <class It, class Less>
void binary_insertion(It first, It last, Ops<Less>& ops) {
    const std::ptrdiff_t n = last - first;
    for (std::ptrdiff_t i = 1; i < n; ++i) {
        const auto pos = upper_position(first, 0, i, first[i], ops);
        if (pos < i) {
            std::rotate(first + pos, first + i, first + i + 1);
            ops.count_moves(static_cast<std::uint64_t>(i - pos) + 1);
        }
    }
}

}  // namespace detail

template <std::random_access_iterator It, class Less = std::less<>>
void straight_insertionsort(It first, It last, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::straight_insertion(first, last, ops);
}

template <std::random_access_iterator It, class Less = std::less<>>
void binary_insertionsort(It first, It last, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::binary_insertion(first, last, ops);
}

}  // namespace qxsort
