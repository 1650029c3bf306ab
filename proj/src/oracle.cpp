#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qxsort/insertion.hpp"
#include "qxsort/merge.hpp"
#include "qxsort/merge_insertion.hpp"
#include "qxsort/quickxsort.hpp"
#include "qxsort/verify.hpp"

namespace qxsort::verify {
namespace {

// Walks the tree of random draws depth first. Each run replays the fixed
// prefix and takes choice 0 for new draws.
class PathSource {
public:
    std::uint64_t below(std::uint64_t n) {
        if (pos_ < path_.size()) {
            if (path_[pos_].second != n) throw std::logic_error("draw sequence is not replayable");
        } else {
            path_.emplace_back(0, n);
        }
        prob_ /= static_cast<double>(n);
        return path_[pos_++].first;
    }

    double probability() const { return prob_; }

    // Moves to the next path; false when all have been visited.
    bool advance() {
        path_.resize(pos_);
        while (!path_.empty() && path_.back().first + 1 == path_.back().second) path_.pop_back();
        pos_ = 0;
        prob_ = 1.0;
        if (path_.empty()) return false;
        ++path_.back().first;
        return true;
    }

private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;
    std::size_t pos_ = 0;
    double prob_ = 1.0;
};

template <class R>
std::uint64_t cost(const instrument::Algorithm& algo, std::vector<std::int64_t> d, R& rng) {
    CountingContext ctx;
    switch (algo.kind) {
        case instrument::AlgoKind::QuickXsort:
            quickxsort(d.begin(), d.end(), algo.config, rng, ctx);
            break;
        case instrument::AlgoKind::Mergesort: {
            const BaseCase b = algo.config.effective_base();
            mergesort(d.begin(), d.end(), ctx, std::less<>{}, algo.config.leaf_limit(d.size()), b.kind, b.simplified);
            break;
        }
        case instrument::AlgoKind::BinaryInsertion:
            binary_insertionsort(d.begin(), d.end(), ctx);
            break;
        case instrument::AlgoKind::StraightInsertion:
            straight_insertionsort(d.begin(), d.end(), ctx);
            break;
        case instrument::AlgoKind::MergeInsertion:
            merge_insertionsort(d.begin(), d.end(), ctx, algo.simplified);
            break;
    }
    if (!std::is_sorted(d.begin(), d.end())) throw std::logic_error("oracle run produced unsorted output");
    return ctx.comparisons;
}

}  // namespace

Moments exhaustive_moments(const instrument::Algorithm& algo, std::size_t n) {
    if (n > 10) throw std::invalid_argument("exhaustive enumeration is limited to n <= 10");
    std::vector<std::int64_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long double s = 0, s2 = 0, count = 0;
    Moments m;
    do {
        FirstChoice rng;
        const auto c = cost(algo, perm, rng);
        s += c;
        s2 += static_cast<long double>(c) * c;
        count += 1;
        m.max = std::max(m.max, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    m.mean = static_cast<double>(s / count);
    m.var = static_cast<double>(s2 / count - (s / count) * (s / count));
    return m;
}

Moments enumerate_all_moments(const instrument::Algorithm& algo, std::size_t n) {
    if (n > 6) throw std::invalid_argument("full enumeration is limited to n <= 6");
    std::vector<std::int64_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long double s = 0, s2 = 0, count = 0;
    Moments m;
    do {
        PathSource src;
        do {
            const auto c = cost(algo, perm, src);
            const long double p = src.probability();
            s += p * c;
            s2 += p * static_cast<long double>(c) * c;
            m.max = std::max(m.max, c);
        } while (src.advance());
        count += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    m.mean = static_cast<double>(s / count);
    m.var = static_cast<double>(s2 / count - (s / count) * (s / count));
    return m;
}

}  // namespace qxsort::verify
