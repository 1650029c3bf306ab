#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "qxsort/config.hpp"

namespace qxsort::analysis {

double harmonic(std::size_t m);

// Regularized incomplete beta I_x(a, b) for positive integer a, b.
double regularized_beta(double x, unsigned a, unsigned b);
// I_{x,y}(a, b) = I_y(a, b) - I_x(a, b).
double incomplete_beta(double x, double y, unsigned a, unsigned b);

// Linear-term penalty of QuickXsort over X for median-of-k pivots.
// `a` is X's leading coefficient (1 for Mergesort).
double penalty_q(std::size_t k, Alpha alpha, double a = 1.0);
// Factor H in the variance's linear term (in (0, 1)).
double variance_H(std::size_t k, Alpha alpha);

// P(J = j) for j in [0, n): rank of the median of a random k-sample.
std::vector<double> pivot_pmf(std::size_t n, std::size_t k);

// Moments of the comparison count of Quickselect (random pivot) for the
// median (rank ceil(k/2)) of k elements.
double quickselect_median_mean(std::size_t k);
double quickselect_median_m2(std::size_t k);

// Mean and second moment of a cost, indexed by size 0..N.
struct CostModel {
    std::vector<double> mean;
    std::vector<double> m2;

    double var(std::size_t n) const { return m2[n] - mean[n] * mean[n]; }
    std::size_t size() const { return mean.size(); }
};

// Top-down Mergesort (split sizes ceil/floor), runs of size <= leaf_limit
// handled by `leaf` (which must cover sizes up to leaf_limit).
CostModel mergesort_model(std::size_t N, std::size_t leaf_limit = 1, const CostModel* leaf = nullptr);
CostModel binary_insertion_model(std::size_t N);
CostModel straight_insertion_model(std::size_t N);

enum class HeapMode { Best, Average, Worst };
// Model of ExternalHeapsort: construction (best/avg/worst) + sort-down.
// The variance is taken as 0.
CostModel external_heapsort_model(std::size_t N, HeapMode mode);
double external_heapsort_sortdown(std::size_t m);

// Exact average of binary insertion sort.
double insertionsort_mean(std::size_t n);
double insertionsort_variance(std::size_t n);
std::uint64_t merge_insertion_worstcase(std::size_t n);

// Periodic linear-term coefficients, x = fractional part of lg n.
double is_coefficient(double x);
double mi_coefficient(double x);

// Moments of the pivot-sampling cost s(k).
struct SamplingModel {
    std::function<double(std::size_t)> mean;
    std::function<double(std::size_t)> m2;
};
SamplingModel quickselect_sampling();

struct CostTables {
    std::vector<double> c;   // mean
    std::vector<double> m2;  // second moment (empty if not computed)

    double variance(std::size_t n) const { return m2[n] - c[n] * c[n]; }
};

// Exact recurrences over n = 0..N for the configuration's segment rule.
// Fallback and pseudomedian pivots are not modelled (ConfigError).
std::vector<double> tabulate_mean(const SortConfig& cfg, std::size_t N, const CostModel& x,
                                  const CostModel& base, const SamplingModel& s = quickselect_sampling());
CostTables tabulate_variance(const SortConfig& cfg, std::size_t N, const CostModel& x, const CostModel& base,
                             const SamplingModel& s = quickselect_sampling());

// X and base models that match the implementation for this configuration.
CostModel x_model_for(const SortConfig& cfg, std::size_t N, HeapMode heap = HeapMode::Average);
CostModel base_model_for(const SortConfig& cfg, std::size_t N);

struct VarianceCoefficient {
    double c0;  // constant part
    double c1;  // multiplier of X's variance coefficient
};
std::optional<VarianceCoefficient> variance_coefficient_reference(std::size_t k, Alpha alpha);

// Columns n, c, sqrt(v)/n, (c - n lg n)/n for every `every`-th n and n = N.
void write_csv(const CostTables& t, std::ostream& out, std::size_t every = 1);

}  // namespace qxsort::analysis
