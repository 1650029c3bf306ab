#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <span>

#include "qxsort/config.hpp"
#include "qxsort/counting.hpp"
#include "qxsort/heap.hpp"
#include "qxsort/merge.hpp"
#include "qxsort/random.hpp"
#include "qxsort/select.hpp"

namespace qxsort {
namespace detail {

template <class It, class Less>
class Driver {
public:
    Driver(const SortConfig& cfg, std::size_t n_top, Ops<Less>& ops)
        : cfg_(cfg),
          ops_(ops),
          leaf_{cfg.effective_base().kind, std::max<std::size_t>(1, cfg.leaf_limit(n_top)),
                cfg.base_case.simplified} {}

    // X sorts f[r+1, m) with f[0, r) as buffer.
    void x_right(It f, std::size_t r, std::size_t m) {
        It data = f + (r + 1);
        const std::size_t md = m - r - 1;
        if (md < 2) return;
        run_x(f, data, md, r, [&](auto& kit) {
            ops_.swap(f, f + r);  // pivot out of the way; gap is f[1, r+1)
            kit.sort_reinhardt(data, md, r);
            ops_.swap(f, f + r);
        }, HeapOrientation::Max, f + (r - md));
    }

    // X sorts f[0, r) with f[r+1, m) as buffer.
    void x_left(It f, std::size_t r, std::size_t m) {
        const std::size_t md = r;
        if (md < 2) return;
        It buf = f + (r + 1);
        const std::size_t g = m - r - 1;
        if (cfg_.x_algo == XAlgo::MergesortReinhardt) {
            // mirror image of x_right
            auto mops = mirrored(ops_);
            auto rf = rev(f + m);
            MergeKit<decltype(rf), Flipped<Less>> kit(mops, leaf_);
            mops.swap(rf, rf + g);
            kit.sort_reinhardt(rf + (g + 1), md, g);
            mops.swap(rf, rf + g);
            return;
        }
        run_x(buf, f, md, g, [](auto&) {}, HeapOrientation::Min, buf);
    }

    void base(It f, std::size_t m) { sort_leaf(f, m, ops_, Leaf{leaf_.kind, m, leaf_.simplified}); }

private:
    template <class ReinhardtFn>
    void run_x(It buf, It data, std::size_t md, std::size_t /*buffer size*/, ReinhardtFn&& reinhardt,
               HeapOrientation o, It heap_out) {
        MergeKit<It, Less> kit(ops_, leaf_);
        switch (cfg_.x_algo) {
            case XAlgo::MergesortPingPongFull:
                kit.sort_full(data, md, buf);
                break;
            case XAlgo::MergesortPingPongHalf:
                kit.sort_half(data, md, buf);
                break;
            case XAlgo::MergesortSimpleSwap:
                kit.sort_simple_swap(data, md, buf);
                break;
            case XAlgo::MergesortBoustrophedonic:
                sort_boustrophedonic(data, md, buf, ops_, leaf_);
                break;
            case XAlgo::MergesortReinhardt:
                reinhardt(kit);
                break;
            case XAlgo::ExternalHeapsort:
                external_heapsort(data, md, heap_out, o, ops_);
                break;
        }
    }

    const SortConfig& cfg_;
    Ops<Less>& ops_;
    Leaf leaf_;
};

template <class It, class R, class Less>
void quickxsort(It first, std::size_t n, const SortConfig& cfg, R& rng, Ops<Less>& ops) {
    if (n < 2) return;
    const std::size_t w = cfg.threshold(n);
    Driver<It, Less> drv(cfg, n, ops);
    std::size_t lo = 0, hi = n;
    bool use_mom = false;
    while (hi - lo > w) {
        const std::size_t m = hi - lo;
        It f = first + lo;
        ++ops.ctx->partition_rounds;
        std::size_t r;
        if (use_mom) {
            r = (m - 1) / 2;
            mom_select(f, m, r, ops);
            use_mom = false;
        } else {
            r = choose_and_partition(f, m, cfg.pivot, rng, ops);
        }
        const std::size_t j1 = r, j2 = m - 1 - r;
        if (cfg.pivot.fallback) {
            const double bad = (0.5 - cfg.pivot.fallback->delta) * static_cast<double>(m);
            if (static_cast<double>(std::min(j1, j2)) <= bad) use_mom = true;
        }
        if (recurse_left(j1, j2, cfg.alpha)) {
            drv.x_right(f, r, m);
            hi = lo + r;
        } else {
            drv.x_left(f, r, m);
            lo = lo + r + 1;
        }
    }
    drv.base(first + lo, hi - lo);
}

}  // namespace detail

// Sorts [first, last) in place. Throws ConfigError for invalid configurations.
template <std::random_access_iterator It, UniformSource R, class Less = std::less<>>
void quickxsort(It first, It last, const SortConfig& cfg, R& rng, CountingContext& ctx, Less less = {}) {
    cfg.validate();
    detail::Ops<Less> ops{less, &ctx};
    detail::quickxsort(first, static_cast<std::size_t>(last - first), cfg, rng, ops);
}

template <class T, UniformSource R, class Less = std::less<>>
void quickxsort(std::span<T> seq, const SortConfig& cfg, R& rng, CountingContext& ctx, Less less = {}) {
    quickxsort(seq.begin(), seq.end(), cfg, rng, ctx, less);
}

}  // namespace qxsort
