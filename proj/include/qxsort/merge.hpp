#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <stdexcept>
#include <vector>

#include "qxsort/config.hpp"
#include "qxsort/counting.hpp"
#include "qxsort/insertion.hpp"
#include "qxsort/merge_insertion.hpp"

namespace qxsort {
namespace detail {

// How runs at the bottom of a Mergesort are sorted.
struct Leaf {
    BaseCase::Kind kind = BaseCase::Kind::None;
    std::size_t limit = 1;
    bool simplified = true;
};

template <class It, class Less>
void sort_leaf(It first, std::size_t m, Ops<Less>& ops, const Leaf& leaf) {
    if (m < 2) return;
    switch (leaf.kind) {
        case BaseCase::Kind::StraightInsertion:
            straight_insertion(first, first + m, ops);
            break;
        case BaseCase::Kind::MergeInsertion:
            merge_insertion(first, first + m, ops, leaf.simplified);
            break;
        default:
            binary_insertion(first, first + m, ops);
            break;
    }
}

template <class A, class B, class Less>
void swap_block(A a, B b, std::size_t m, Ops<Less>& ops) {
    for (std::size_t i = 0; i < m; ++i) ops.swap(a + i, b + i);
}

// Merge runs x[0,nx) and y[0,ny) into out[0,nx+ny) by swaps. The output area
// must not overlap the inputs; its old contents end up where the inputs were.
template <class A, class B, class Less>
void merge_into(A x, std::size_t nx, A y, std::size_t ny, B out, Ops<Less>& ops) {
    std::size_t i = 0, j = 0, o = 0;
    while (i < nx && j < ny) {
        if (ops.less(y[j], x[i]))
            ops.swap(out + o++, y + j++);
        else
            ops.swap(out + o++, x + i++);
    }
    while (i < nx) ops.swap(out + o++, x + i++);
    while (j < ny) ops.swap(out + o++, y + j++);
}

// The first run sits in a buffer, the second at a[n1, n1+n2); a[0, n1)
// holds buffer elements. Output goes to a[0, n1+n2).
template <class A, class B, class Less>
void merge_from_buffer(B buf, std::size_t n1, A a, std::size_t n2, Ops<Less>& ops) {
    std::size_t i = 0, j = n1, o = 0;
    const std::size_t end = n1 + n2;
    while (i < n1 && j < end) {
        if (ops.less(a[j], buf[i]))
            ops.swap(a + o++, a + j++);
        else
            ops.swap(a + o++, buf + i++);
    }
    while (i < n1) ops.swap(a + o++, buf + i++);
}

// Merge adjacent runs a[0,n1) and a[n1,n1+n2) by moving the shorter run into
// the buffer (needs min(n1,n2) slots) and merging towards the other end.
template <class A, class B, class Less>
void merge_swap(A a, std::size_t n1, std::size_t n2, B buf, Ops<Less>& ops) {
    if (n1 == 0 || n2 == 0) return;
    if (n1 <= n2) {
        swap_block(a, buf, n1, ops);
        merge_from_buffer(buf, n1, a, n2, ops);
    } else {
        auto mops = mirrored(ops);
        auto ra = rev(a + (n1 + n2));
        auto rb = rev(buf + n2);
        swap_block(ra, rb, n2, mops);
        merge_from_buffer(rb, n2, ra, n1, mops);
    }
}

// Layout [gap t | left l | right r] with r/2 <= t < r. Merges left to right
// until the output reaches the left run, then right to left. Output ends in
// the first l+r slots, the gap in the last t.
template <class It, class Less>
void merge_reinhardt_unchecked(It base, std::size_t t, std::size_t l, std::size_t r, Ops<Less>& ops) {
    It L = base + t;
    It R = base + (t + l);
    std::size_t i1 = 0, i2 = 0, o = 0;
    while (i1 < l && i2 < t) {
        if (ops.less(R[i2], L[i1]))
            ops.swap(base + o++, R + i2++);
        else
            ops.swap(base + o++, L + i1++);
    }
    if (i1 == l) {
        while (i2 < r) ops.swap(base + o++, R + i2++);
        return;
    }
    std::size_t p = l + r;  // one past the next write position
    std::size_t e1 = l, e2 = r;
    while (e1 > i1 && e2 > i2) {
        if (ops.less(R[e2 - 1], L[e1 - 1]))
            ops.swap(base + --p, L + --e1);
        else
            ops.swap(base + --p, R + --e2);
    }
    while (e2 > i2) ops.swap(base + --p, R + --e2);
    // a leftover of the left run is already in place
}

template <class A, class Less>
class MergeKit {
public:
    MergeKit(Ops<Less>& ops, Leaf leaf) : ops_(ops), leaf_(leaf) {}

    // Sort a[0,m) in place with floor(m/2) buffer slots.
    template <class B>
    void sort_half(A a, std::size_t m, B buf) {
        if (m <= leaf_.limit) return sort_leaf(a, m, ops_, leaf_);
        const std::size_t m1 = m / 2, m2 = m - m1;
        sort_to(a, m1, buf);
        sort_half(a + m1, m2, a);
        merge_from_buffer(buf, m1, a, m2, ops_);
    }

    // Sort src[0,m) into dst[0,m); dst's elements move to src.
    template <class B>
    void sort_to(A src, std::size_t m, B dst) {
        if (m <= leaf_.limit) {
            sort_leaf(src, m, ops_, leaf_);
            swap_block(src, dst, m, ops_);
            return;
        }
        const std::size_t m1 = m / 2, m2 = m - m1;
        sort_half(src, m1, dst);
        sort_half(src + m1, m2, dst);
        merge_into(src, m1, src + m1, m2, dst, ops_);
    }

    // Sort a[0,m) in place with m buffer slots.
    template <class B>
    void sort_full(A a, std::size_t m, B buf) {
        if (m <= leaf_.limit) return sort_leaf(a, m, ops_, leaf_);
        const std::size_t m1 = m / 2, m2 = m - m1;
        sort_full_to(a, m1, buf);
        sort_full_to(a + m1, m2, buf + m1);
        merge_into(buf, m1, buf + m1, m2, a, ops_);
    }

    template <class B>
    void sort_full_to(A src, std::size_t m, B dst) {
        if (m <= leaf_.limit) {
            sort_leaf(src, m, ops_, leaf_);
            swap_block(src, dst, m, ops_);
            return;
        }
        const std::size_t m1 = m / 2, m2 = m - m1;
        sort_full(src, m1, dst);
        sort_full(src + m1, m2, dst);
        merge_into(src, m1, src + m1, m2, dst, ops_);
    }

    template <class B>
    void sort_simple_swap(A a, std::size_t m, B buf) {
        if (m <= leaf_.limit) return sort_leaf(a, m, ops_, leaf_);
        const std::size_t m1 = m / 2, m2 = m - m1;
        sort_simple_swap(a, m1, buf);
        sort_simple_swap(a + m1, m2, buf);
        merge_swap(a, m1, m2, buf, ops_);
    }

    // Gap of g >= ceil(m/4) slots directly before data: gap == data - g.
    void sort_reinhardt(A data, std::size_t m, std::size_t g) {
        A gap = data - static_cast<std::ptrdiff_t>(g);
        if (m < 4 || m <= leaf_.limit) return sort_half(data, m, gap);
        const std::size_t l = m / 2, r = m - l;
        sort_half(data, l, gap);
        sort_half(data + l, r, gap);
        const std::size_t t = std::min(g, r - 1);
        A base = data - static_cast<std::ptrdiff_t>(t);
        merge_reinhardt_unchecked(base, t, l, r, ops_);
        std::rotate(base, base + m, data + m);
        ops_.count_moves(m + t);
    }

private:
    Ops<Less>& ops_;
    Leaf leaf_;
};

inline std::size_t run_boundary(std::size_t m, std::size_t level, std::size_t i) {
    return static_cast<std::size_t>((static_cast<unsigned __int128>(i) * m) >> level);
}

// Bottom-up schedule: level d has 2^d runs [floor(i m/2^d), floor((i+1) m/2^d)).
// Leaves are reported first, then merges level by level with the sweep
// direction alternating. fn_leaf(begin, len); fn_merge(begin, len1, len2).
template <class LeafFn, class MergeFn>
void bottom_up_schedule(std::size_t m, std::size_t leaf_limit, LeafFn&& fn_leaf, MergeFn&& fn_merge) {
    if (m < 2) return;
    std::size_t depth = 0;
    while (((m + (std::size_t{1} << depth) - 1) >> depth) > leaf_limit) ++depth;
    const std::size_t leaves = std::size_t{1} << depth;
    for (std::size_t i = 0; i < leaves; ++i) {
        const std::size_t b = run_boundary(m, depth, i), e = run_boundary(m, depth, i + 1);
        if (e - b > 1) fn_leaf(b, e - b);
    }
    bool forward = true;
    for (std::size_t d = depth; d-- > 0;) {
        const std::size_t runs = std::size_t{1} << d;
        for (std::size_t s = 0; s < runs; ++s) {
            const std::size_t i = forward ? s : runs - 1 - s;
            const std::size_t b = run_boundary(m, d + 1, 2 * i);
            const std::size_t mid = run_boundary(m, d + 1, 2 * i + 1);
            const std::size_t e = run_boundary(m, d + 1, 2 * i + 2);
            if (mid > b && e > mid) fn_merge(b, mid - b, e - mid);
        }
        forward = !forward;
    }
}

template <class A, class B, class Less>
void sort_boustrophedonic(A a, std::size_t m, B buf, Ops<Less>& ops, const Leaf& leaf) {
    bottom_up_schedule(
        m, leaf.limit, [&](std::size_t b, std::size_t len) { sort_leaf(a + b, len, ops, leaf); },
        [&](std::size_t b, std::size_t n1, std::size_t n2) { merge_swap(a + b, n1, n2, buf, ops); });
}

}  // namespace detail

// Merge adjacent sorted runs [first, mid) and [mid, last) using a buffer of
// at least min(mid-first, last-mid) elements. Buffer contents are permuted.
template <std::random_access_iterator It, std::random_access_iterator B, class Less = std::less<>>
void merge_swap(It first, It mid, It last, B buffer, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::merge_swap(first, static_cast<std::size_t>(mid - first), static_cast<std::size_t>(last - mid),
                       buffer, ops);
}

// Layout [gap t | run l | run r] starting at base; requires r/2 <= t < r.
template <std::random_access_iterator It, class Less = std::less<>>
void merge_reinhardt(It base, std::size_t t, std::size_t l, std::size_t r, CountingContext& ctx,
                     Less less = {}) {
    if (!(r <= 2 * t && t < r)) throw std::invalid_argument("Reinhardt merge needs r/2 <= t < r");
    detail::Ops<Less> ops{less, &ctx};
    detail::merge_reinhardt_unchecked(base, t, l, r, ops);
}

// Plain top-down Mergesort with an internal buffer of floor(n/2) elements.
template <std::random_access_iterator It, class Less = std::less<>>
void mergesort(It first, It last, CountingContext& ctx, Less less = {}, std::size_t leaf_limit = 1,
               BaseCase::Kind leaf_kind = BaseCase::Kind::None, bool simplified = true) {
    const auto n = static_cast<std::size_t>(last - first);
    if (n < 2) return;
    using T = typename std::iterator_traits<It>::value_type;
    std::vector<T> buf(first, first + static_cast<std::ptrdiff_t>(n / 2));
    detail::Ops<Less> ops{less, &ctx};
    detail::MergeKit<It, Less> kit(ops, detail::Leaf{leaf_kind, std::max<std::size_t>(1, leaf_limit), simplified});
    kit.sort_half(first, n, buf.begin());
}

}  // namespace qxsort
