#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qxsort {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Buffer fraction as an exact ratio num/den.
struct Alpha {
    unsigned num = 1;
    unsigned den = 1;

    static constexpr Alpha one() { return {1, 1}; }
    static constexpr Alpha half() { return {1, 2}; }
    static constexpr Alpha quarter() { return {1, 4}; }

    double value() const { return static_cast<double>(num) / den; }
    bool operator==(const Alpha&) const = default;
    // a >= b as rationals
    bool at_least(Alpha b) const {
        return static_cast<unsigned long long>(num) * b.den >=
               static_cast<unsigned long long>(b.num) * den;
    }
};

enum class XAlgo {
    MergesortPingPongFull,    // alpha = 1
    MergesortPingPongHalf,    // alpha = 1/2
    MergesortReinhardt,       // alpha = 1/4
    MergesortSimpleSwap,      // alpha = 1/2, top-down
    MergesortBoustrophedonic, // alpha = 1/2, bottom-up
    ExternalHeapsort,         // alpha = 1
};

Alpha required_alpha(XAlgo x);
bool is_mergesort(XAlgo x);

struct Fallback {
    double delta = 1.0 / 16;
};

// Below these sizes the sqrt(n) strategy switches to cheaper pivots.
struct SqrtThresholds {
    std::size_t pseudo25 = 20000;
    std::size_t pseudo9 = 800;
    std::size_t median3 = 100;
};

struct PivotStrategy {
    enum class Kind { FixedK, SqrtN };

    Kind kind = Kind::FixedK;
    std::size_t k = 3;
    std::optional<Fallback> fallback;
    std::optional<SqrtThresholds> thresholds;

    static PivotStrategy fixed(std::size_t k);
    static PivotStrategy sqrt_n(bool with_thresholds = true);

    // k(n) = 2*floor(sqrt(n)/2) + 1 for SqrtN (ignores thresholds).
    std::size_t sample_size(std::size_t n) const;
};

std::size_t sqrt_sample_size(std::size_t n);

struct BaseCase {
    enum class Kind { None, StraightInsertion, BinaryInsertion, MergeInsertion };

    Kind kind = Kind::None;
    std::size_t limit = 0;     // fixed size, used when log_scale == 0
    unsigned log_scale = 0;    // if > 0: limit = log_scale * floor(lg n)
    bool simplified = true;    // MergeInsertion only

    static BaseCase none() { return {}; }
    static BaseCase straight(std::size_t w = 42) { return {Kind::StraightInsertion, w, 0, true}; }
    static BaseCase binary(std::size_t limit) { return {Kind::BinaryInsertion, limit, 0, true}; }
    static BaseCase binary_log(unsigned scale) { return {Kind::BinaryInsertion, 0, scale, true}; }
    static BaseCase merge_insertion(std::size_t limit, bool simplified) {
        return {Kind::MergeInsertion, limit, 0, simplified};
    }
    static BaseCase merge_insertion_log(unsigned scale, bool simplified) {
        return {Kind::MergeInsertion, 0, scale, simplified};
    }

    // Largest size handled directly by the base sorter for a problem of size n.
    std::size_t size_for(std::size_t n) const;
};

struct SortConfig {
    Alpha alpha = Alpha::half();
    XAlgo x_algo = XAlgo::MergesortPingPongHalf;
    PivotStrategy pivot = PivotStrategy::fixed(3);
    BaseCase base_case = BaseCase::straight();
    bool counting_mode = false;

    // Base case after counting-mode adjustment (straight insertion is dropped).
    BaseCase effective_base() const;
    // QuickXsort recursion stops at segments of this size or less.
    std::size_t threshold(std::size_t n_top) const;
    // Mergesort leaves are at most this large (1 means plain Mergesort).
    std::size_t leaf_limit(std::size_t n_top) const;

    void validate() const;
};

// Presets matching common configurations.
SortConfig counting_config(XAlgo x, Alpha a, PivotStrategy p);

// Segment rule for a split into j1 (left) and j2 (right) elements: true if
// the recursion continues on the left one. If both fit X's buffer bound
// (n-1)/(1+alpha), X takes the larger segment and ties recurse left;
// otherwise X takes the smaller one.
bool recurse_left(std::size_t j1, std::size_t j2, Alpha a);

std::string to_string(XAlgo x);
std::string to_string(const Alpha& a);
std::string to_string(const PivotStrategy& p);
std::string to_string(const BaseCase& b);

}  // namespace qxsort
