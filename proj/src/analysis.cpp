#include "qxsort/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fmt/format.h>

namespace qxsort::analysis {
namespace {

using ld = long double;

unsigned ceil_lg(std::size_t k) { return k <= 1 ? 0 : static_cast<unsigned>(std::bit_width(k - 1)); }

ld log_binom(unsigned n, unsigned k) {
    return std::lgamma(static_cast<ld>(n) + 1) - std::lgamma(static_cast<ld>(k) + 1) -
           std::lgamma(static_cast<ld>(n - k) + 1);
}

// Quickselect tables f (mean) and g (second moment) indexed [n][m], 1 <= m <= n.
struct SelectTables {
    std::size_t K = 0;
    std::vector<std::vector<double>> f, g;

    void grow(std::size_t k) {
        if (k <= K) return;
        K = std::max(k, 2 * K);
        f.assign(K + 1, {});
        g.assign(K + 1, {});
        for (std::size_t n = 1; n <= K; ++n) {
            f[n].assign(n + 1, 0.0);
            g[n].assign(n + 1, 0.0);
            if (n == 1) continue;
            const double toll = static_cast<double>(n - 1);
            for (std::size_t m = 1; m <= n; ++m) {
                double ey = 0, ey2 = 0;
                for (std::size_t p = 1; p < m; ++p) {
                    ey += f[n - p][m - p];
                    ey2 += g[n - p][m - p];
                }
                for (std::size_t p = m + 1; p <= n; ++p) {
                    ey += f[p - 1][m];
                    ey2 += g[p - 1][m];
                }
                ey /= static_cast<double>(n);
                ey2 /= static_cast<double>(n);
                f[n][m] = toll + ey;
                g[n][m] = toll * toll + 2 * toll * ey + ey2;
            }
        }
    }
};

SelectTables& select_tables() {
    thread_local SelectTables t;
    return t;
}

void require_modelled(const SortConfig& cfg) {
    if (cfg.pivot.fallback) throw ConfigError("the recurrence does not model the median-of-medians fallback");
    if (cfg.pivot.kind == PivotStrategy::Kind::SqrtN && cfg.pivot.thresholds)
        throw ConfigError("the recurrence does not model pseudomedian pivots; use sqrt-exact");
    cfg.validate();
}

}  // namespace

double harmonic(std::size_t m) {
    ld h = 0;
    for (std::size_t i = m; i >= 1; --i) h += 1.0L / static_cast<ld>(i);
    return static_cast<double>(h);
}

double regularized_beta(double x, unsigned a, unsigned b) {
    if (a == 0 || b == 0) throw std::invalid_argument("beta parameters must be positive");
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    // I_x(a,b) = P(Bin(a+b-1, x) >= a)
    const unsigned N = a + b - 1;
    const ld lx = std::log(static_cast<ld>(x)), l1x = std::log1p(-static_cast<ld>(x));
    ld s = 0;
    for (unsigned j = a; j <= N; ++j) s += std::exp(log_binom(N, j) + j * lx + (N - j) * l1x);
    return static_cast<double>(std::min<ld>(s, 1));
}

double incomplete_beta(double x, double y, unsigned a, unsigned b) {
    return regularized_beta(y, a, b) - regularized_beta(x, a, b);
}

double penalty_q(std::size_t k, Alpha alpha, double a) {
    if (k % 2 == 0) throw ConfigError("sample size k must be odd");
    const unsigned t = static_cast<unsigned>(k / 2);
    const double al = alpha.value();
    const double H = incomplete_beta(0.0, al / (1 + al), t + 2, t + 1) +
                     incomplete_beta(0.5, 1 / (1 + al), t + 2, t + 1);
    return 1 / H - a * (harmonic(k + 1) - harmonic(t + 1)) / (H * std::log(2.0));
}

double variance_H(std::size_t k, Alpha alpha) {
    if (k % 2 == 0) throw ConfigError("sample size k must be odd");
    const unsigned t = static_cast<unsigned>(k / 2);
    const double al = alpha.value();
    const double s = incomplete_beta(al / (1 + al), 0.5, t + 3, t + 1) +
                     incomplete_beta(1 / (1 + al), 1.0, t + 3, t + 1);
    return 1 - static_cast<double>(t + 2) / static_cast<double>(k + 2) * s;
}

std::vector<double> pivot_pmf(std::size_t n, std::size_t k) {
    if (k == 0 || k % 2 == 0) throw ConfigError("sample size k must be odd");
    if (k > n) throw ConfigError("sample size exceeds n");
    const std::size_t t = k / 2;
    std::vector<ld> w(n, 0.0L);
    // ratio P(j+1)/P(j) = (j+1)/(j+1-t) * (n-1-j-t)/(n-1-j)
    w[t] = 1;
    ld total = 1;
    for (std::size_t j = t; j + 1 <= n - 1 - t; ++j) {
        w[j + 1] = w[j] * static_cast<ld>(j + 1) / static_cast<ld>(j + 1 - t) * static_cast<ld>(n - 1 - j - t) /
                   static_cast<ld>(n - 1 - j);
        total += w[j + 1];
    }
    std::vector<double> p(n, 0.0);
    for (std::size_t j = t; j + t < n; ++j) {
        const ld v = (w[j] + w[n - 1 - j]) / (2 * total);
        p[j] = static_cast<double>(v);
    }
    return p;
}

double quickselect_median_mean(std::size_t k) {
    if (k <= 1) return 0.0;
    auto& t = select_tables();
    t.grow(k);
    return t.f[k][(k + 1) / 2];
}

double quickselect_median_m2(std::size_t k) {
    if (k <= 1) return 0.0;
    auto& t = select_tables();
    t.grow(k);
    return t.g[k][(k + 1) / 2];
}

SamplingModel quickselect_sampling() { return {quickselect_median_mean, quickselect_median_m2}; }

CostModel mergesort_model(std::size_t N, std::size_t leaf_limit, const CostModel* leaf) {
    leaf_limit = std::max<std::size_t>(1, leaf_limit);
    if (leaf_limit > 1 && (!leaf || leaf->size() <= std::min(leaf_limit, N)))
        throw std::invalid_argument("leaf model does not cover the leaf sizes");
    CostModel x{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    std::vector<double> var(N + 1, 0.0);
    for (std::size_t n = 2; n <= N; ++n) {
        if (n <= leaf_limit) {
            x.mean[n] = leaf->mean[n];
            var[n] = leaf->var(n);
            x.m2[n] = leaf->m2[n];
            continue;
        }
        const std::size_t a = (n + 1) / 2, b = n / 2;
        const ld m = static_cast<ld>(a), q = static_cast<ld>(b);
        const ld el = m / (q + 1) + q / (m + 1);
        const ld el2 = 2 * m * (m - 1) / ((q + 1) * (q + 2)) + 2 * q * (q - 1) / ((m + 1) * (m + 2));
        const ld vl = el2 + el - el * el;
        x.mean[n] = static_cast<double>(x.mean[a] + x.mean[b] + static_cast<ld>(n) - el);
        var[n] = static_cast<double>(var[a] + var[b] + vl);
        x.m2[n] = var[n] + x.mean[n] * x.mean[n];
    }
    return x;
}

CostModel binary_insertion_model(std::size_t N) {
    CostModel x{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    ld mean = 0, var = 0;
    for (std::size_t n = 2; n <= N; ++n) {
        // inserting into n-1 elements: n positions, 2^c - n of them cost c-1
        const unsigned c = ceil_lg(n);
        const ld cheap = static_cast<ld>((std::size_t{1} << c) - n) / static_cast<ld>(n);
        const ld e = c - cheap;
        const ld e2 = (1 - cheap) * c * c + cheap * (c - 1.0L) * (c - 1.0L);
        mean += e;
        var += e2 - e * e;
        x.mean[n] = static_cast<double>(mean);
        x.m2[n] = static_cast<double>(var + mean * mean);
    }
    return x;
}

CostModel straight_insertion_model(std::size_t N) {
    CostModel x{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    ld mean = 0, var = 0;
    for (std::size_t n = 2; n <= N; ++n) {
        // inserting into i = n-1 elements; landing at position p costs i-p+1, p=0 costs i
        const ld i = static_cast<ld>(n - 1);
        ld e = i, e2 = i * i;
        for (std::size_t p = 1; p < n; ++p) {
            const ld c = i - static_cast<ld>(p) + 1;
            e += c;
            e2 += c * c;
        }
        e /= static_cast<ld>(n);
        e2 /= static_cast<ld>(n);
        mean += e;
        var += e2 - e * e;
        x.mean[n] = static_cast<double>(mean);
        x.m2[n] = static_cast<double>(var + mean * mean);
    }
    return x;
}

double external_heapsort_sortdown(std::size_t m) {
    if (m < 2) return 0.0;
    const std::size_t h = std::bit_width(m) - 1;
    const double md = static_cast<double>(m);
    return md * (static_cast<double>(h) - 1) + 2 * (md - static_cast<double>(std::size_t{1} << h));
}

CostModel external_heapsort_model(std::size_t N, HeapMode mode) {
    CostModel x{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
    for (std::size_t m = 2; m <= N; ++m) {
        const double md = static_cast<double>(m);
        double build = 0;
        switch (mode) {
            case HeapMode::Best: build = md - 1; break;
            case HeapMode::Average: build = 1.8813726 * md; break;
            case HeapMode::Worst: build = 2 * md; break;
        }
        x.mean[m] = std::max(0.0, external_heapsort_sortdown(m) + build);
        x.m2[m] = x.mean[m] * x.mean[m];
    }
    return x;
}

double insertionsort_mean(std::size_t n) {
    ld s = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const unsigned c = ceil_lg(k);
        s += c + 1 - static_cast<ld>(std::size_t{1} << c) / static_cast<ld>(k);
    }
    return static_cast<double>(s);
}

double insertionsort_variance(std::size_t n) {
    if (n < 2) return 0.0;
    return binary_insertion_model(n).var(n);
}

std::uint64_t merge_insertion_worstcase(std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        // ceil(lg(3j/4)) = least e with 2^(e+2) >= 3j
        unsigned e = 0;
        while ((std::uint64_t{1} << (e + 2)) < 3 * static_cast<std::uint64_t>(j)) ++e;
        s += e;
    }
    return s;
}

double is_coefficient(double x) {
    const double p = std::exp2(x);
    return x - p + 1 - std::log(2.0) * (2 - x) * p;
}

double mi_coefficient(double x) {
    return (3 - std::log2(3.0)) - (2 - x - std::exp2(1 - x)) + (1 - std::exp2(-x)) * (3 / (std::exp2(x) + 1) - 1);
}

std::vector<double> tabulate_mean(const SortConfig& cfg, std::size_t N, const CostModel& x, const CostModel& base,
                                  const SamplingModel& s) {
    return tabulate_variance(cfg, N, x, base, SamplingModel{s.mean, nullptr}).c;
}

CostTables tabulate_variance(const SortConfig& cfg, std::size_t N, const CostModel& x, const CostModel& base,
                             const SamplingModel& s) {
    require_modelled(cfg);
    if (x.size() <= N) throw std::invalid_argument("X model shorter than N");
    const std::size_t w = cfg.threshold(N);
    if (base.size() <= std::min(w, N)) throw std::invalid_argument("base model shorter than threshold");
    const bool second = static_cast<bool>(s.m2);
    CostTables out;
    out.c.assign(N + 1, 0.0);
    if (second) out.m2.assign(N + 1, 0.0);
    for (std::size_t n = 0; n <= N; ++n) {
        if (n <= w) {
            out.c[n] = base.mean[n];
            if (second) out.m2[n] = base.m2[n];
            continue;
        }
        const std::size_t k = cfg.pivot.sample_size(n);
        const std::size_t t = k / 2;
        const auto pmf = pivot_pmf(n, k);
        const ld P = static_cast<ld>(n - k);
        const ld sm = s.mean(k);
        const ld s2 = second ? static_cast<ld>(s.m2(k)) : 0.0L;
        ld c = 0, m2 = 0;
        for (std::size_t j = t; j + t < n; ++j) {
            const std::size_t j2 = n - 1 - j;
            const bool left = recurse_left(j, j2, cfg.alpha);
            const std::size_t rec = left ? j : j2, oth = left ? j2 : j;
            const ld p = pmf[j];
            const ld xm = x.mean[oth], cm = out.c[rec];
            c += p * (P + sm + xm + cm);
            if (second) {
                const ld x2 = x.m2[oth], c2 = out.m2[rec];
                m2 += p * (P * P + s2 + x2 + c2 + 2 * P * sm + 2 * P * xm + 2 * P * cm + 2 * sm * xm + 2 * sm * cm +
                           2 * xm * cm);
            }
        }
        out.c[n] = static_cast<double>(c);
        if (second) out.m2[n] = static_cast<double>(m2);
    }
    return out;
}

CostModel x_model_for(const SortConfig& cfg, std::size_t N, HeapMode heap) {
    if (!is_mergesort(cfg.x_algo)) return external_heapsort_model(N, heap);
    const BaseCase b = cfg.effective_base();
    if (b.kind == BaseCase::Kind::None) return mergesort_model(N);
    if (b.log_scale > 0) throw ConfigError("log-sized base cases are not modelled");
    const std::size_t lim = std::max<std::size_t>(1, b.limit);
    CostModel leaf;
    if (b.kind == BaseCase::Kind::StraightInsertion)
        leaf = straight_insertion_model(lim);
    else if (b.kind == BaseCase::Kind::BinaryInsertion)
        leaf = binary_insertion_model(lim);
    else
        throw ConfigError("MergeInsertion base cases are not modelled");
    return mergesort_model(N, lim, &leaf);
}

CostModel base_model_for(const SortConfig& cfg, std::size_t N) {
    const BaseCase b = cfg.effective_base();
    const std::size_t w = std::min(cfg.threshold(N), N);
    switch (b.kind) {
        case BaseCase::Kind::None:
        case BaseCase::Kind::BinaryInsertion:
            return binary_insertion_model(w);
        case BaseCase::Kind::StraightInsertion:
            return straight_insertion_model(w);
        case BaseCase::Kind::MergeInsertion:
            break;
    }
    throw ConfigError("MergeInsertion base cases are not modelled");
}

std::optional<VarianceCoefficient> variance_coefficient_reference(std::size_t k, Alpha alpha) {
    struct Row {
        std::size_t k;
        Alpha a;
        VarianceCoefficient v;
    };
    static const Row rows[] = {
        {1, Alpha::one(), {0.4344, 0.2000}},     {3, Alpha::one(), {0.1119, 0.2195}},
        {9, Alpha::one(), {0.01763, 0.2477}},    {1, Alpha::half(), {0.4281, 0.2941}},
        {3, Alpha::half(), {0.1068, 0.3234}},    {9, Alpha::half(), {0.01572, 0.3632}},
        {1, Alpha::quarter(), {0.3134, 0.4413}}, {3, Alpha::quarter(), {0.0728, 0.4550}},
        {9, Alpha::quarter(), {0.00988, 0.4483}},
    };
    for (const auto& r : rows)
        if (r.k == k && r.a == alpha) return r.v;
    return std::nullopt;
}

void write_csv(const CostTables& t, std::ostream& out, std::size_t every) {
    if (every == 0) throw std::invalid_argument("row stride must be positive");
    out << "n,c,sd_over_n,b\n";
    const std::size_t N = t.c.size() - 1;
    for (std::size_t n = 1; n <= N; ++n) {
        if (n % every != 0 && n != N) continue;
        const double nd = static_cast<double>(n);
        const double sd = t.m2.empty() ? 0.0 : std::sqrt(std::max(0.0, t.variance(n)));
        out << fmt::format("{},{:.6f},{:.6f},{:.6f}\n", n, t.c[n], sd / nd, (t.c[n] - nd * std::log2(nd)) / nd);
    }
}

}  // namespace qxsort::analysis
