#pragma once

#include <cstddef>
#include <functional>
#include <iterator>

#include "qxsort/counting.hpp"
#include "qxsort/merge.hpp"

namespace qxsort {

// Max: the segment holds the large elements and the buffer only elements
// that are not larger. Min: the mirror image.
enum class HeapOrientation { Max, Min };

namespace detail {

template <class It, class Less>
void heap_sift_down(It d, std::size_t m, std::size_t i, Ops<Less>& ops) {
    for (;;) {
        std::size_t c = 2 * i + 1;
        if (c >= m) return;
        if (c + 1 < m && ops.less(d[c], d[c + 1])) ++c;
        if (!ops.less(d[i], d[c])) return;
        ops.swap(d + i, d + c);
        i = c;
    }
}

// Heap in d[0,m); out[0,m) are buffer slots whose elements act as -infinity.
// Each extraction swaps the root into the output area and lets the buffer
// element sink along the path of larger children, one comparison per level.
template <class It, class B, class Less>
void external_heapsort_max(It d, std::size_t m, B out, Ops<Less>& ops) {
    if (m == 0) return;
    for (std::size_t i = m / 2; i-- > 0;) heap_sift_down(d, m, i, ops);
    for (std::size_t e = 0; e < m; ++e) {
        ops.swap(d, out + (m - 1 - e));
        std::size_t pos = 0;
        for (;;) {
            std::size_t c = 2 * pos + 1;
            if (c >= m) break;
            if (c + 1 < m && ops.less(d[c], d[c + 1])) ++c;
            ops.swap(d + pos, d + c);
            pos = c;
        }
    }
    swap_block(out, d, m, ops);
}

template <class It, class B, class Less>
void external_heapsort(It d, std::size_t m, B out, HeapOrientation o, Ops<Less>& ops) {
    if (o == HeapOrientation::Max) return external_heapsort_max(d, m, out, ops);
    auto mops = mirrored(ops);
    external_heapsort_max(rev(d + m), m, rev(out + m), mops);
}

}  // namespace detail

// Sorts [first, last) using m = last-first buffer slots starting at buffer.
template <std::random_access_iterator It, std::random_access_iterator B, class Less = std::less<>>
void external_heapsort(It first, It last, B buffer, HeapOrientation o, CountingContext& ctx, Less less = {}) {
    detail::Ops<Less> ops{less, &ctx};
    detail::external_heapsort(first, static_cast<std::size_t>(last - first), buffer, o, ops);
}

}  // namespace qxsort
