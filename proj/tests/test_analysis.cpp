#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "qxsort/analysis.hpp"
#include "qxsort/insertion.hpp"
#include "qxsort/merge.hpp"
#include "qxsort/select.hpp"

using namespace qxsort;
using namespace qxsort::analysis;

namespace {

double choose(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    double r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// Replays every sequence of random draws, each weighted by its probability.
class Paths {
public:
    std::uint64_t below(std::uint64_t n) {
        if (pos_ == path_.size()) path_.push_back({0, n});
        prob_ /= static_cast<double>(n);
        return path_[pos_++].first;
    }
    double prob() const { return prob_; }
    bool next() {
        path_.resize(pos_);
        while (!path_.empty() && path_.back().first + 1 == path_.back().second) path_.pop_back();
        pos_ = 0;
        prob_ = 1;
        if (path_.empty()) return false;
        ++path_.back().first;
        return true;
    }

private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;
    std::size_t pos_ = 0;
    double prob_ = 1;
};

// Mean and second moment of a cost over all permutations of 0..n-1 and all draws.
template <class F>
std::pair<double, double> brute_moments(std::size_t n, F cost) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    double s = 0, s2 = 0, cnt = 0;
    do {
        Paths src;
        do {
            auto a = p;
            const double c = static_cast<double>(cost(a, src));
            s += src.prob() * c;
            s2 += src.prob() * c * c;
        } while (src.next());
        cnt += 1;
    } while (std::next_permutation(p.begin(), p.end()));
    return {s / cnt, s2 / cnt};
}

}  // namespace

TEST_CASE("incomplete beta") {
    CHECK(regularized_beta(0.5, 1, 1) == doctest::Approx(0.5));
    CHECK(regularized_beta(0.3, 1, 1) == doctest::Approx(0.3));
    // P(Bin(4, 0.3) >= 2)
    CHECK(regularized_beta(0.3, 2, 3) == doctest::Approx(0.3483).epsilon(1e-12));
    for (double x : {0.1, 0.37, 0.8})
        CHECK(regularized_beta(x, 4, 7) == doctest::Approx(1 - regularized_beta(1 - x, 7, 4)).epsilon(1e-12));
    CHECK(incomplete_beta(0.2, 0.6, 2, 2) == doctest::Approx(regularized_beta(0.6, 2, 2) - regularized_beta(0.2, 2, 2)));
    CHECK(regularized_beta(0.0, 3, 3) == 0.0);
    CHECK(regularized_beta(1.0, 3, 3) == 1.0);
    CHECK_THROWS_AS(regularized_beta(0.5, 0, 3), std::invalid_argument);
}

TEST_CASE("pivot distribution is beta-binomial") {
    for (std::size_t n = 1; n <= 40; ++n)
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, 11); k += 2) {
            const auto pmf = pivot_pmf(n, k);
            REQUIRE(pmf.size() == n);
            const std::size_t t = k / 2;
            double total = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const double ref = choose(j, t) * choose(n - 1 - j, t) / choose(n, k);
                CHECK(pmf[j] == doctest::Approx(ref).epsilon(1e-12));
                total += pmf[j];
            }
            CHECK(total == doctest::Approx(1.0));
        }
}

TEST_CASE("penalty and variance factor") {
    CHECK(penalty_q(1, Alpha::one()) == doctest::Approx(1.1146).epsilon(5e-5));
    CHECK(penalty_q(3, Alpha::half()) == doctest::Approx(0.4050).epsilon(5e-5));
    CHECK(penalty_q(21, Alpha::quarter()) == doctest::Approx(0.05498).epsilon(5e-5));
    // penalty shrinks with larger samples
    for (Alpha a : {Alpha::one(), Alpha::half(), Alpha::quarter()})
        for (std::size_t k = 1; k < 41; k += 2) CHECK(penalty_q(k + 2, a) < penalty_q(k, a));
    for (std::size_t k : {1u, 3u, 9u}) {
        const double h = variance_H(k, Alpha::half());
        CHECK(h > 0);
        CHECK(h < 1);
    }
    CHECK(variance_coefficient_reference(3, Alpha::half()).has_value());
    CHECK_FALSE(variance_coefficient_reference(5, Alpha::half()).has_value());
}

TEST_CASE("quickselect moments against enumeration") {
    for (std::size_t k : {1u, 3u, 5u, 7u}) {
        const auto [mean, m2] = brute_moments(k, [&](std::vector<int>& a, Paths& src) {
            CountingContext c;
            detail::Ops<std::less<>> ops{{}, &c};
            detail::quickselect(a.begin(), k, k / 2, src, ops);
            return c.comparisons;
        });
        CHECK(quickselect_median_mean(k) == doctest::Approx(mean).epsilon(1e-12));
        CHECK(quickselect_median_m2(k) == doctest::Approx(m2).epsilon(1e-10));
    }
    CHECK(quickselect_median_mean(3) == doctest::Approx(8.0 / 3));
}

TEST_CASE("sort cost models against enumeration") {
    const auto ms = mergesort_model(8);
    const auto bi = binary_insertion_model(8);
    const auto si = straight_insertion_model(8);
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto m = brute_moments(n, [](std::vector<int>& a, Paths&) {
            CountingContext c;
            mergesort(a.begin(), a.end(), c);
            return c.comparisons;
        });
        CHECK(ms.mean[n] == doctest::Approx(m.first).epsilon(1e-12));
        CHECK(ms.m2[n] == doctest::Approx(m.second).epsilon(1e-12));
        const auto b = brute_moments(n, [](std::vector<int>& a, Paths&) {
            CountingContext c;
            binary_insertionsort(a.begin(), a.end(), c);
            return c.comparisons;
        });
        CHECK(bi.mean[n] == doctest::Approx(b.first).epsilon(1e-12));
        CHECK(bi.m2[n] == doctest::Approx(b.second).epsilon(1e-12));
        CHECK(insertionsort_mean(n) == doctest::Approx(b.first).epsilon(1e-12));
        CHECK(insertionsort_variance(n) == doctest::Approx(b.second - b.first * b.first).epsilon(1e-9));
        const auto s = brute_moments(n, [](std::vector<int>& a, Paths&) {
            CountingContext c;
            straight_insertionsort(a.begin(), a.end(), c);
            return c.comparisons;
        });
        CHECK(si.mean[n] == doctest::Approx(s.first).epsilon(1e-12));
        CHECK(si.m2[n] == doctest::Approx(s.second).epsilon(1e-12));
    }
    CHECK(ms.mean[4] == doctest::Approx(14.0 / 3));
}

TEST_CASE("closed forms") {
    CHECK(is_coefficient(0) == doctest::Approx(-2 * std::log(2.0)));
    CHECK(is_coefficient(0.999999) == doctest::Approx(is_coefficient(0)).epsilon(1e-5));
    const std::uint64_t w[] = {0, 0, 1, 3, 5, 7, 10, 13, 16, 19, 22, 26};
    for (std::size_t n = 1; n < 12; ++n) CHECK(merge_insertion_worstcase(n) == w[n]);
    // the simplified bound stays below -1.3999 + O(1)
    for (int i = 0; i < 100; ++i) CHECK(mi_coefficient(i / 100.0) >= 1.3999 - 1e-4);
}

TEST_CASE("recurrence checks and limits") {
    SortConfig c = counting_config(XAlgo::MergesortPingPongHalf, Alpha::half(), PivotStrategy::fixed(3));
    const std::size_t N = 1 << 13;
    const auto t = tabulate_variance(c, N, x_model_for(c, N), base_model_for(c, N));
    const double nd = N;
    CHECK((t.c[N] - nd * std::log2(nd)) / nd == doctest::Approx(-0.84).epsilon(0.02 / 0.84));
    CHECK(tabulate_mean(c, N, x_model_for(c, N), base_model_for(c, N))[N] == doctest::Approx(t.c[N]));

    SortConfig k1 = counting_config(XAlgo::MergesortPingPongHalf, Alpha::half(), PivotStrategy::fixed(1));
    const auto v = tabulate_variance(k1, N, x_model_for(k1, N), base_model_for(k1, N));
    CHECK(std::sqrt(v.variance(N)) / nd == doctest::Approx(0.654).epsilon(0.01 / 0.654));

    SortConfig fb = c;
    fb.pivot.fallback = Fallback{};
    CHECK_THROWS_AS(tabulate_mean(fb, 100, x_model_for(c, 100), base_model_for(c, 100)), ConfigError);
    SortConfig th = counting_config(XAlgo::MergesortPingPongHalf, Alpha::half(), PivotStrategy::sqrt_n(true));
    CHECK_THROWS_AS(tabulate_mean(th, 100, x_model_for(c, 100), base_model_for(c, 100)), ConfigError);
    SortConfig mi = c;
    mi.base_case = BaseCase::merge_insertion(8, true);
    CHECK_THROWS_AS(base_model_for(mi, 100), ConfigError);

    std::ostringstream os;
    write_csv(t, os, 4096);
    CHECK(os.str().rfind("n,c,sd_over_n,b\n4096,", 0) == 0);
}
