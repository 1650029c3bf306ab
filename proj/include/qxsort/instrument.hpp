#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qxsort/config.hpp"
#include "qxsort/counting.hpp"

namespace qxsort::instrument {

enum class InputKind { RandomPermutation, Sorted, Reversed, FewDistinct, Adversarial };

struct InputSpec {
    InputKind kind = InputKind::RandomPermutation;
    std::size_t distinct = 2;  // FewDistinct only
};

// Deterministic for a given (n, spec, seed). Values are 0..n-1 unless
// FewDistinct. Adversarial is the organ-pipe sequence 0,2,4,...,5,3,1.
std::vector<std::int64_t> gen_input(std::size_t n, const InputSpec& spec, std::uint64_t seed);

enum class AlgoKind { QuickXsort, Mergesort, BinaryInsertion, StraightInsertion, MergeInsertion };

struct Algorithm {
    AlgoKind kind = AlgoKind::QuickXsort;
    SortConfig config;        // QuickXsort, and leaf handling for Mergesort
    bool simplified = false;  // MergeInsertion

    std::string name() const;
};

// Optional comparator that evaluates a logarithm per comparison, to make
// comparisons expensive in running-time studies.
struct LogCostLess {
    bool operator()(std::int64_t a, std::int64_t b) const;
};

struct RunOptions {
    bool log_cost = false;
    bool first_choice_rng = false;  // sampling always takes the first candidates
};

// Sorts data in place; throws std::logic_error if the result is not sorted.
CountingContext run_once(const Algorithm& algo, std::vector<std::int64_t>& data, std::uint64_t seed,
                         const RunOptions& opt = {});

struct TrialSummary {
    std::size_t n = 0;
    std::size_t trials = 0;
    double mean_comparisons = 0;
    double stddev_comparisons = 0;  // sample standard deviation
    double b_estimate = 0;          // (mean - n lg n) / n
    double standard_error = 0;      // of the mean, in comparisons
    double mean_swaps = 0;
    std::uint64_t min_comparisons = 0;
    std::uint64_t max_comparisons = 0;
    std::uint64_t seed = 0;
};

// Per-trial seed derived from the base seed.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t i);

// Worker threads used by run_trials: QXSORT_THREADS if set, else the
// hardware concurrency.
unsigned thread_count();

// Independent trials; the aggregate does not depend on the thread count.
TrialSummary run_trials(const Algorithm& algo, std::size_t n, std::size_t trials, std::uint64_t base_seed,
                        const InputSpec& spec = {}, const RunOptions& opt = {});
// Raw per-trial comparison counts in trial order.
std::vector<std::uint64_t> trial_comparisons(const Algorithm& algo, std::size_t n, std::size_t trials,
                                             std::uint64_t base_seed, const InputSpec& spec = {},
                                             const RunOptions& opt = {});
// All n! permutations of 0..n-1 (n <= 9) with first-choice sampling.
TrialSummary run_exhaustive(const Algorithm& algo, std::size_t n);

TrialSummary summarize(const std::vector<std::uint64_t>& comps, const std::vector<std::uint64_t>& swaps,
                       std::size_t n, std::uint64_t seed);

}  // namespace qxsort::instrument
