#include "qxsort/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qxsort {

Alpha required_alpha(XAlgo x) {
    switch (x) {
        case XAlgo::MergesortPingPongFull:
        case XAlgo::ExternalHeapsort:
            return Alpha::one();
        case XAlgo::MergesortPingPongHalf:
        case XAlgo::MergesortSimpleSwap:
        case XAlgo::MergesortBoustrophedonic:
            return Alpha::half();
        case XAlgo::MergesortReinhardt:
            return Alpha::quarter();
    }
    return Alpha::one();
}

bool is_mergesort(XAlgo x) { return x != XAlgo::ExternalHeapsort; }

bool recurse_left(std::size_t j1, std::size_t j2, Alpha a) {
    const unsigned long long lim = static_cast<unsigned long long>(j1 + j2) * a.den;
    const auto fits = [&](std::size_t j) { return static_cast<unsigned long long>(j) * (a.num + a.den) <= lim; };
    if (fits(j1) && fits(j2)) return j1 <= j2;
    return j1 > j2;
}

PivotStrategy PivotStrategy::fixed(std::size_t k) {
    PivotStrategy p;
    p.kind = Kind::FixedK;
    p.k = k;
    return p;
}

PivotStrategy PivotStrategy::sqrt_n(bool with_thresholds) {
    PivotStrategy p;
    p.kind = Kind::SqrtN;
    p.k = 0;
    if (with_thresholds) p.thresholds = SqrtThresholds{};
    return p;
}

std::size_t sqrt_sample_size(std::size_t n) {
    // floor(sqrt(n)) computed exactly in integers
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    // floor(sqrt(n)/2) == floor(floor(sqrt(n))/2)
    return 2 * (r / 2) + 1;
}

std::size_t PivotStrategy::sample_size(std::size_t n) const {
    return kind == Kind::FixedK ? k : sqrt_sample_size(n);
}

std::size_t BaseCase::size_for(std::size_t n) const {
    if (kind == Kind::None) return 1;
    if (log_scale == 0) return limit;
    const std::size_t lg = n < 2 ? 0 : static_cast<std::size_t>(std::bit_width(n) - 1);
    return std::max<std::size_t>(1, log_scale * lg);
}

BaseCase SortConfig::effective_base() const {
    if (counting_mode && base_case.kind == BaseCase::Kind::StraightInsertion) return BaseCase::none();
    return base_case;
}

std::size_t SortConfig::threshold(std::size_t n_top) const {
    const BaseCase b = effective_base();
    std::size_t w = b.kind == BaseCase::Kind::None ? 2 : std::max<std::size_t>(2, b.size_for(n_top));
    if (pivot.kind == PivotStrategy::Kind::FixedK) w = std::max(w, pivot.k);
    return w;
}

std::size_t SortConfig::leaf_limit(std::size_t n_top) const {
    return effective_base().size_for(n_top);
}

void SortConfig::validate() const {
    if (!(alpha == Alpha::one() || alpha == Alpha::half() || alpha == Alpha::quarter()))
        throw ConfigError("alpha must be 1, 1/2 or 1/4");
    if (!alpha.at_least(required_alpha(x_algo)))
        throw ConfigError("alpha " + to_string(alpha) + " is too small for " + to_string(x_algo));
    if (pivot.kind == PivotStrategy::Kind::FixedK) {
        if (pivot.k == 0 || pivot.k % 2 == 0) throw ConfigError("sample size k must be odd");
    }
    if (pivot.fallback) {
        const double d = pivot.fallback->delta;
        if (!(d > 0.0 && d < 0.5)) throw ConfigError("fallback delta must lie in (0, 1/2)");
    }
    if (pivot.thresholds) {
        const auto& t = *pivot.thresholds;
        if (!(t.median3 <= t.pseudo9 && t.pseudo9 <= t.pseudo25))
            throw ConfigError("sqrt thresholds must be non-decreasing");
    }
    if (base_case.kind != BaseCase::Kind::None && base_case.log_scale == 0 && base_case.limit == 0)
        throw ConfigError("base case limit must be positive");
}

SortConfig counting_config(XAlgo x, Alpha a, PivotStrategy p) {
    SortConfig c;
    c.x_algo = x;
    c.alpha = a;
    c.pivot = p;
    c.base_case = BaseCase::none();
    c.counting_mode = true;
    return c;
}

std::string to_string(XAlgo x) {
    switch (x) {
        case XAlgo::MergesortPingPongFull: return "pingpong-full";
        case XAlgo::MergesortPingPongHalf: return "pingpong-half";
        case XAlgo::MergesortReinhardt: return "reinhardt";
        case XAlgo::MergesortSimpleSwap: return "simple-swap";
        case XAlgo::MergesortBoustrophedonic: return "boustrophedonic";
        case XAlgo::ExternalHeapsort: return "external-heapsort";
    }
    return "?";
}

std::string to_string(const Alpha& a) {
    if (a.den == 1) return std::to_string(a.num);
    return std::to_string(a.num) + "/" + std::to_string(a.den);
}

std::string to_string(const PivotStrategy& p) {
    std::string s = p.kind == PivotStrategy::Kind::FixedK ? "mo" + std::to_string(p.k)
                                                         : (p.thresholds ? "sqrt" : "sqrt-exact");
    if (p.fallback) s += "+mom";
    return s;
}

std::string to_string(const BaseCase& b) {
    std::string name;
    switch (b.kind) {
        case BaseCase::Kind::None: return "none";
        case BaseCase::Kind::StraightInsertion: name = "straight"; break;
        case BaseCase::Kind::BinaryInsertion: name = "binary"; break;
        case BaseCase::Kind::MergeInsertion: name = b.simplified ? "mi-simple" : "mi"; break;
    }
    if (b.log_scale > 0) return name + ":log" + std::to_string(b.log_scale);
    return name + ":" + std::to_string(b.limit);
}

}  // namespace qxsort
