#pragma once

#include <cstdint>
#include <iterator>
#include <utility>

namespace qxsort {

// Cost tallies for one sort run. Every comparator invocation bumps
// `comparisons`; element exchanges and single-element moves are kept apart.
struct CountingContext {
    std::uint64_t comparisons = 0;
    std::uint64_t swaps = 0;
    std::uint64_t moves = 0;
    std::uint64_t partition_rounds = 0;

    void reset() { *this = CountingContext{}; }
};

namespace detail {

// Comparator + tally bundle threaded through all algorithms.
template <class Less>
struct Ops {
    Less less_fn;
    CountingContext* ctx;

    template <class A, class B>
    bool less(const A& a, const B& b) {
        ++ctx->comparisons;
        return less_fn(a, b);
    }

    template <class It>
    void swap(It a, It b) {
        ++ctx->swaps;
        std::iter_swap(a, b);
    }

    void count_moves(std::uint64_t m) { ctx->moves += m; }
};

// Reverses the order relation; used together with reverse iterators to
// mirror an in-place algorithm.
template <class Less>
struct Flipped {
    Less base;
    template <class A, class B>
    bool operator()(const A& a, const B& b) {
        return base(b, a);
    }
};

template <class Less>
Ops<Flipped<Less>> mirrored(const Ops<Less>& ops) {
    return Ops<Flipped<Less>>{Flipped<Less>{ops.less_fn}, ops.ctx};
}

template <class It>
std::reverse_iterator<It> rev(It it) {
    return std::reverse_iterator<It>(it);
}

}  // namespace detail
}  // namespace qxsort
