#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qxsort/instrument.hpp"

namespace qxsort::verify {

struct Moments {
    double mean = 0;
    double var = 0;
    std::uint64_t max = 0;
};

// Over all n! permutations of 0..n-1, sampling with first-choice draws.
Moments exhaustive_moments(const instrument::Algorithm& algo, std::size_t n);

// Over all permutations and every path of random draws, each path weighted
// by its probability. Feasible for n <= 6.
Moments enumerate_all_moments(const instrument::Algorithm& algo, std::size_t n);

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    std::function<CriterionResult(std::uint64_t seed)> run;
};

const std::vector<Criterion>& criteria();

// Runs the selected criteria (all if `only` is empty); unknown ids throw
// std::invalid_argument. `report` is called after each one. Randomized
// criteria derive their seeds from `seed`.
std::vector<CriterionResult> run(const std::vector<std::string>& only, std::uint64_t seed = 0,
                                 const std::function<void(const CriterionResult&)>& report = {});

std::string format_line(const CriterionResult& r);

}  // namespace qxsort::verify
