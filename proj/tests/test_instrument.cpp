#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "qxsort/instrument.hpp"

using namespace qxsort;
using namespace qxsort::instrument;

namespace {

Algorithm qms_mo3() {
    Algorithm a;
    a.config = counting_config(XAlgo::MergesortPingPongHalf, Alpha::half(), PivotStrategy::fixed(3));
    return a;
}

// Textbook top-down Mergesort comparison count, ceil/floor split.
std::uint64_t ref_mergesort(std::vector<std::int64_t>& v, std::size_t b, std::size_t e) {
    if (e - b < 2) return 0;
    const std::size_t m = b + (e - b + 1) / 2;
    std::uint64_t c = ref_mergesort(v, b, m) + ref_mergesort(v, m, e);
    std::vector<std::int64_t> out;
    std::size_t i = b, j = m;
    while (i < m && j < e) {
        ++c;
        out.push_back(v[j] < v[i] ? v[j++] : v[i++]);
    }
    while (i < m) out.push_back(v[i++]);
    while (j < e) out.push_back(v[j++]);
    std::copy(out.begin(), out.end(), v.begin() + static_cast<long>(b));
    return c;
}

}  // namespace

TEST_CASE("input generators") {
    const auto r1 = gen_input(100, {}, 5), r2 = gen_input(100, {}, 5), r3 = gen_input(100, {}, 6);
    CHECK(r1 == r2);
    CHECK(r1 != r3);
    auto s = r1;
    std::sort(s.begin(), s.end());
    CHECK(s == gen_input(100, {InputKind::Sorted}, 0));
    auto rev = gen_input(5, {InputKind::Reversed}, 0);
    CHECK(rev == std::vector<std::int64_t>{4, 3, 2, 1, 0});
    CHECK(gen_input(7, {InputKind::Adversarial}, 0) == std::vector<std::int64_t>{0, 2, 4, 6, 5, 3, 1});
    const auto few = gen_input(90, {InputKind::FewDistinct, 3}, 1);
    for (std::int64_t v = 0; v < 3; ++v) CHECK(std::count(few.begin(), few.end(), v) == 30);
    CHECK_THROWS_AS(gen_input(5, {InputKind::FewDistinct, 0}, 1), std::invalid_argument);
}

TEST_CASE("exhaustive Mergesort matches a reference implementation") {
    Algorithm ms;
    ms.kind = AlgoKind::Mergesort;
    ms.config.counting_mode = true;
    ms.config.base_case = BaseCase::none();
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<std::int64_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        double sum = 0, cnt = 0;
        do {
            auto v = p;
            sum += static_cast<double>(ref_mergesort(v, 0, n));
            cnt += 1;
        } while (std::next_permutation(p.begin(), p.end()));
        CHECK(run_exhaustive(ms, n).mean_comparisons == doctest::Approx(sum / cnt).epsilon(1e-12));
    }
    CHECK(run_exhaustive(ms, 4).mean_comparisons == doctest::Approx(14.0 / 3));
    CHECK_THROWS_AS(run_exhaustive(ms, 10), std::invalid_argument);
}

TEST_CASE("summaries") {
    const auto s = summarize({10, 12, 14}, {1, 2, 3}, 4, 9);
    CHECK(s.mean_comparisons == doctest::Approx(12));
    CHECK(s.stddev_comparisons == doctest::Approx(2));
    CHECK(s.standard_error == doctest::Approx(2 / std::sqrt(3.0)));
    CHECK(s.b_estimate == doctest::Approx((12 - 8) / 4.0));
    CHECK(s.mean_swaps == doctest::Approx(2));
    CHECK(s.min_comparisons == 10);
    CHECK(s.max_comparisons == 14);
    CHECK(s.seed == 9);
}

TEST_CASE("results do not depend on the thread count") {
    setenv("QXSORT_THREADS", "1", 1);
    CHECK(thread_count() == 1);
    const auto one = trial_comparisons(qms_mo3(), 3000, 37, 11);
    setenv("QXSORT_THREADS", "4", 1);
    CHECK(thread_count() == 4);
    const auto four = trial_comparisons(qms_mo3(), 3000, 37, 11);
    CHECK(one == four);
    const auto a = run_trials(qms_mo3(), 3000, 37, 11), b = run_trials(qms_mo3(), 3000, 37, 11);
    CHECK(a.mean_comparisons == b.mean_comparisons);
    CHECK(a.stddev_comparisons == b.stddev_comparisons);
    unsetenv("QXSORT_THREADS");
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
}

TEST_CASE("run options") {
    auto v = gen_input(2000, {}, 3);
    auto w = v;
    const auto plain = run_once(qms_mo3(), v, 3);
    RunOptions opt;
    opt.log_cost = true;
    const auto logged = run_once(qms_mo3(), w, 3, opt);
    // the comparator costs more but orders the same way
    CHECK(plain.comparisons == logged.comparisons);
    CHECK(std::is_sorted(w.begin(), w.end()));

    for (AlgoKind k : {AlgoKind::BinaryInsertion, AlgoKind::StraightInsertion, AlgoKind::MergeInsertion}) {
        Algorithm a;
        a.kind = k;
        auto x = gen_input(300, {InputKind::FewDistinct, 4}, 1);
        CHECK_NOTHROW(run_once(a, x, 1));
        CHECK(std::is_sorted(x.begin(), x.end()));
    }
}

TEST_CASE("algorithm names") {
    Algorithm a;
    CHECK(a.name() == "qms");
    a.config.x_algo = XAlgo::ExternalHeapsort;
    CHECK(a.name() == "qhs");
    a.kind = AlgoKind::MergeInsertion;
    a.simplified = true;
    CHECK(a.name() == "mi-simple");
}
