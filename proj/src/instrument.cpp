#include "qxsort/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <exception>
#include <mutex>
#include <thread>

#include "qxsort/insertion.hpp"
#include "qxsort/merge.hpp"
#include "qxsort/merge_insertion.hpp"
#include "qxsort/quickxsort.hpp"
#include "qxsort/random.hpp"

namespace qxsort::instrument {

std::vector<std::int64_t> gen_input(std::size_t n, const InputSpec& spec, std::uint64_t seed) {
    std::vector<std::int64_t> v(n);
    switch (spec.kind) {
        case InputKind::Sorted:
            std::iota(v.begin(), v.end(), 0);
            return v;
        case InputKind::Reversed:
            for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(n - 1 - i);
            return v;
        case InputKind::Adversarial: {
            std::size_t lo = 0, hi = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (i % 2 == 0)
                    v[lo++] = static_cast<std::int64_t>(i);
                else
                    v[--hi] = static_cast<std::int64_t>(i);
            }
            return v;
        }
        case InputKind::FewDistinct: {
            if (spec.distinct == 0) throw std::invalid_argument("FewDistinct needs at least one value");
            for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int64_t>(i % spec.distinct);
            break;
        }
        case InputKind::RandomPermutation:
            std::iota(v.begin(), v.end(), 0);
            break;
    }
    Rng rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    return v;
}

std::string Algorithm::name() const {
    switch (kind) {
        case AlgoKind::QuickXsort: return config.x_algo == XAlgo::ExternalHeapsort ? "qhs" : "qms";
        case AlgoKind::Mergesort: return "mergesort";
        case AlgoKind::BinaryInsertion: return "insertion";
        case AlgoKind::StraightInsertion: return "straight-insertion";
        case AlgoKind::MergeInsertion: return simplified ? "mi-simple" : "mi";
    }
    return "?";
}

bool LogCostLess::operator()(std::int64_t a, std::int64_t b) const {
    return std::log(static_cast<double>(a) + 2.0) < std::log(static_cast<double>(b) + 2.0);
}

namespace {

template <class Less, class R>
void dispatch(const Algorithm& algo, std::vector<std::int64_t>& d, R& rng, CountingContext& ctx, Less less) {
    switch (algo.kind) {
        case AlgoKind::QuickXsort:
            quickxsort(d.begin(), d.end(), algo.config, rng, ctx, less);
            break;
        case AlgoKind::Mergesort: {
            const BaseCase b = algo.config.effective_base();
            mergesort(d.begin(), d.end(), ctx, less, algo.config.leaf_limit(d.size()), b.kind, b.simplified);
            break;
        }
        case AlgoKind::BinaryInsertion:
            binary_insertionsort(d.begin(), d.end(), ctx, less);
            break;
        case AlgoKind::StraightInsertion:
            straight_insertionsort(d.begin(), d.end(), ctx, less);
            break;
        case AlgoKind::MergeInsertion:
            merge_insertionsort(d.begin(), d.end(), ctx, algo.simplified, less);
            break;
    }
}

}  // namespace

CountingContext run_once(const Algorithm& algo, std::vector<std::int64_t>& data, std::uint64_t seed,
                         const RunOptions& opt) {
    CountingContext ctx;
    if (opt.first_choice_rng) {
        FirstChoice rng;
        if (opt.log_cost)
            dispatch(algo, data, rng, ctx, LogCostLess{});
        else
            dispatch(algo, data, rng, ctx, std::less<>{});
    } else {
        Rng rng(mix64(seed));
        if (opt.log_cost)
            dispatch(algo, data, rng, ctx, LogCostLess{});
        else
            dispatch(algo, data, rng, ctx, std::less<>{});
    }
    if (!std::is_sorted(data.begin(), data.end())) throw std::logic_error(algo.name() + " produced unsorted output");
    return ctx;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t i) { return mix64(base_seed ^ mix64(i)); }

unsigned thread_count() {
    if (const char* env = std::getenv("QXSORT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void run_all(const Algorithm& algo, std::size_t n, std::size_t trials, std::uint64_t base_seed,
             const InputSpec& spec, const RunOptions& opt, std::vector<std::uint64_t>& comps,
             std::vector<std::uint64_t>& swaps) {
    comps.assign(trials, 0);
    swaps.assign(trials, 0);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t s = trial_seed(base_seed, i);
            auto data = gen_input(n, spec, s);
            const auto ctx = run_once(algo, data, s, opt);
            comps[i] = ctx.comparisons;
            swaps[i] = ctx.swaps;
        }
    };
    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(thread_count(), trials));
    if (threads <= 1) {
        work(0, trials);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = trials * t / threads, e = trials * (t + 1) / threads;
        pool.emplace_back([&, b, e] {
            try {
                work(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

TrialSummary summarize(const std::vector<std::uint64_t>& comps, const std::vector<std::uint64_t>& swaps,
                       std::size_t n, std::uint64_t seed) {
    TrialSummary s;
    s.n = n;
    s.trials = comps.size();
    s.seed = seed;
    if (comps.empty()) return s;
    // Welford, in trial order
    double mean = 0, m2 = 0, sw = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ++k;
        const double x = static_cast<double>(comps[i]);
        const double d = x - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (x - mean);
        sw += (static_cast<double>(swaps[i]) - sw) / static_cast<double>(k);
    }
    s.mean_comparisons = mean;
    s.stddev_comparisons = k > 1 ? std::sqrt(m2 / static_cast<double>(k - 1)) : 0.0;
    s.standard_error = s.stddev_comparisons / std::sqrt(static_cast<double>(k));
    s.mean_swaps = sw;
    const double nd = static_cast<double>(n);
    s.b_estimate = n > 0 ? (mean - nd * std::log2(std::max(nd, 1.0))) / nd : 0.0;
    const auto [mn, mx] = std::minmax_element(comps.begin(), comps.end());
    s.min_comparisons = *mn;
    s.max_comparisons = *mx;
    return s;
}

std::vector<std::uint64_t> trial_comparisons(const Algorithm& algo, std::size_t n, std::size_t trials,
                                             std::uint64_t base_seed, const InputSpec& spec, const RunOptions& opt) {
    std::vector<std::uint64_t> comps, swaps;
    run_all(algo, n, trials, base_seed, spec, opt, comps, swaps);
    return comps;
}

TrialSummary run_trials(const Algorithm& algo, std::size_t n, std::size_t trials, std::uint64_t base_seed,
                        const InputSpec& spec, const RunOptions& opt) {
    std::vector<std::uint64_t> comps, swaps;
    run_all(algo, n, trials, base_seed, spec, opt, comps, swaps);
    return summarize(comps, swaps, n, base_seed);
}

TrialSummary run_exhaustive(const Algorithm& algo, std::size_t n) {
    if (n > 9) throw std::invalid_argument("exhaustive enumeration is limited to n <= 9");
    std::vector<std::int64_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint64_t> comps, swaps;
    RunOptions opt;
    opt.first_choice_rng = true;
    do {
        auto data = perm;
        const auto ctx = run_once(algo, data, 0, opt);
        comps.push_back(ctx.comparisons);
        swaps.push_back(ctx.swaps);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return summarize(comps, swaps, n, 0);
}

}  // namespace qxsort::instrument
