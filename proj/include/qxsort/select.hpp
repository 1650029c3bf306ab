#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <vector>

#include "qxsort/config.hpp"
#include "qxsort/counting.hpp"
#include "qxsort/insertion.hpp"
#include "qxsort/random.hpp"

namespace qxsort {
namespace detail {

// Moves elements < p to the front of a[0,n); one comparison per element.
// p must not live inside the range. Returns the number of smaller elements.
template <class It, class T, class Less>
std::size_t partition_range(It a, std::size_t n, const T& p, Ops<Less>& ops) {
    std::size_t i = 0, j = n;
    for (;;) {
        while (i < j && ops.less(a[i], p)) ++i;
        if (i == j) break;
        while (j - 1 > i && !ops.less(a[j - 1], p)) --j;
        if (j - 1 == i) break;
        ops.swap(a + i, a + (j - 1));
        ++i;
        --j;
    }
    return i;
}

// Moves elements <= p to the front; otherwise as partition_range.
template <class It, class T, class Less>
std::size_t partition_range_le(It a, std::size_t n, const T& p, Ops<Less>& ops) {
    auto mops = Ops<Flipped<Less>>{Flipped<Less>{ops.less_fn}, ops.ctx};
    // x <= p  <=>  not (p < x)  <=>  not flipped(x, p)
    std::size_t i = 0, j = n;
    for (;;) {
        while (i < j && !mops.less(a[i], p)) ++i;
        if (i == j) break;
        while (j - 1 > i && mops.less(a[j - 1], p)) --j;
        if (j - 1 == i) break;
        ops.swap(a + i, a + (j - 1));
        ++i;
        --j;
    }
    return i;
}

// Segment f[0,n) laid out as [t smaller sample | pivot | t larger sample | rest].
// Partitions the rest (n-k comparisons) and returns the pivot's final index.
template <class It, class Less>
std::size_t partition_sampled(It f, std::size_t n, std::size_t t, Ops<Less>& ops) {
    const std::size_t k = 2 * t + 1;
    const std::size_t lt = partition_range(f + k, n - k, f[t], ops);
    if (lt > 0) {
        std::rotate(f + t, f + k, f + (k + lt));
        ops.count_moves(t + 1 + lt);
    }
    return t + lt;
}

// Uniform random k-subset moved to f[0,k) by a partial Fisher-Yates shuffle.
template <class It, class R, class Less>
void sample_to_front(It f, std::size_t n, std::size_t k, R& rng, Ops<Less>& ops) {
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        if (j != i) ops.swap(f + i, f + j);
    }
}

// Quickselect with uniformly random pivots. Afterwards f[target] holds the
// element of that rank, smaller ones before it, the rest after it.
template <class It, class R, class Less>
void quickselect(It f, std::size_t n, std::size_t target, R& rng, Ops<Less>& ops) {
    std::size_t lo = 0, hi = n;
    while (hi - lo > 1) {
        const std::size_t p = lo + static_cast<std::size_t>(rng.below(hi - lo));
        if (p != lo) ops.swap(f + lo, f + p);
        const std::size_t r = lo + partition_sampled(f + lo, hi - lo, 0, ops);
        if (r == target) return;
        if (target < r)
            hi = r;
        else
            lo = r + 1;
    }
}

// Index of the median of f[idx[0..]] (odd count) via insertion on indices.
template <class It, class Less>
std::size_t median_of_indices(It f, std::vector<std::size_t> idx, Ops<Less>& ops) {
    for (std::size_t i = 1; i < idx.size(); ++i) {
        const std::size_t x = idx[i];
        std::size_t lo = 0, hi = i;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (ops.less(f[x], f[idx[mid]]))
                hi = mid;
            else
                lo = mid + 1;
        }
        idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(lo), x);
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    return idx[idx.size() / 2];
}

// Median of g groups of size s taken from f[0, g*s), then median of those.
template <class It, class Less>
std::size_t pseudomedian(It f, std::size_t groups, Ops<Less>& ops) {
    std::vector<std::size_t> meds;
    for (std::size_t g = 0; g < groups; ++g) {
        std::vector<std::size_t> idx(groups);
        for (std::size_t i = 0; i < groups; ++i) idx[i] = g * groups + i;
        meds.push_back(median_of_indices(f, std::move(idx), ops));
    }
    return median_of_indices(f, std::move(meds), ops);
}

// Worst-case linear selection (groups of five). Leaves f partitioned
// around f[target].
template <class It, class Less>
void mom_select(It f, std::size_t n, std::size_t target, Ops<Less>& ops) {
    std::size_t lo = 0, hi = n;
    for (;;) {
        const std::size_t m = hi - lo;
        It g = f + lo;
        if (m <= 5) {
            binary_insertion(g, g + m, ops);
            return;
        }
        const std::size_t groups = m / 5;
        for (std::size_t i = 0; i < groups; ++i) {
            It grp = g + 5 * i;
            binary_insertion(grp, grp + 5, ops);
            ops.swap(g + i, grp + 2);
        }
        mom_select(g, groups, groups / 2, ops);
        ops.swap(g, g + groups / 2);
        const std::size_t r = lo + partition_sampled(g, m, 0, ops);
        if (target < r) {
            hi = r;
            continue;
        }
        // With distinct keys at least 3(groups/2+1)-1 elements land left of the
        // pivot. Fewer means ties went right; split off the run equal to the
        // pivot, else duplicates stall this loop.
        const bool short_left = r - lo + 1 < 3 * (groups / 2 + 1);
        const std::size_t eq =
            target == r || !short_left ? 0 : partition_range_le(f + (r + 1), hi - r - 1, f[r], ops);
        if (target <= r + eq) return;
        lo = r + eq + 1;
    }
}

// One pivot choice plus partition of f[0,m). Returns the pivot index.
template <class It, class R, class Less>
std::size_t choose_and_partition(It f, std::size_t m, const PivotStrategy& ps, R& rng, Ops<Less>& ops) {
    if (ps.kind == PivotStrategy::Kind::SqrtN && ps.thresholds && m >= ps.thresholds->median3 &&
        m < ps.thresholds->pseudo25) {
        const std::size_t groups = m < ps.thresholds->pseudo9 ? 3 : 5;
        sample_to_front(f, m, groups * groups, rng, ops);
        const std::size_t q = pseudomedian(f, groups, ops);
        if (q != 0) ops.swap(f, f + q);
        return partition_sampled(f, m, 0, ops);
    }
    std::size_t k = ps.sample_size(m);
    if (ps.kind == PivotStrategy::Kind::SqrtN && ps.thresholds && m < ps.thresholds->median3) k = 3;
    const std::size_t t = k / 2;
    sample_to_front(f, m, k, rng, ops);
    quickselect(f, k, t, rng, ops);
    return partition_sampled(f, m, t, ops);
}

}  // namespace detail

// Moves a uniformly random k-subset to the front of [first,last) and selects
// its median. On return [first, first+t) hold the smaller sample elements and
// (t, k) the larger ones; the returned index is t = k/2.
template <std::random_access_iterator It, UniformSource R, class Less = std::less<>>
std::size_t select_pivot(It first, It last, std::size_t k, R& rng, CountingContext& ctx, Less less = {}) {
    const auto n = static_cast<std::size_t>(last - first);
    if (k == 0 || k % 2 == 0) throw ConfigError("sample size k must be odd");
    if (k > n) throw ConfigError("sample size exceeds sequence length");
    detail::Ops<Less> ops{less, &ctx};
    detail::sample_to_front(first, n, k, rng, ops);
    detail::quickselect(first, k, k / 2, rng, ops);
    return k / 2;
}

// Partitions around the element at pivot_pos; ties go right. Uses exactly
// n-1 comparisons and returns the pivot's final index.
template <std::random_access_iterator It, class Less = std::less<>>
std::size_t partition(It first, It last, std::size_t pivot_pos, CountingContext& ctx, Less less = {}) {
    const auto n = static_cast<std::size_t>(last - first);
    if (n == 0) return 0;
    detail::Ops<Less> ops{less, &ctx};
    if (pivot_pos != 0) ops.swap(first, first + pivot_pos);
    return detail::partition_sampled(first, n, 0, ops);
}

// Sampled layout as produced by select_pivot: charges n-k comparisons.
template <std::random_access_iterator It, class Less = std::less<>>
std::size_t partition_sampled(It first, It last, std::size_t t, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    return detail::partition_sampled(first, static_cast<std::size_t>(last - first), t, ops);
}

template <std::random_access_iterator It, class Less = std::less<>>
void median_of_medians_select(It first, It last, std::size_t target, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::mom_select(first, static_cast<std::size_t>(last - first), target, ops);
}

}  // namespace qxsort
