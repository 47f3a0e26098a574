#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "swipe/fd.hpp"

namespace swipe {

struct GenConfig {
    std::size_t n_rows = 1000;
    std::size_t n_attrs = 5;
    std::uint64_t seed = 0;
    std::size_t domain_size = 10;
};

struct Dataset {
    Relation relation;
    FDSet fds;
};

/// Uniform random values over `domain_size` symbols per attribute and
/// n_attrs distinct FDs. Each FD has lhs size ~ unif{1, ceil(n_attrs/10)},
/// lhs attributes drawn without replacement, rhs from the rest.
Dataset generate(const GenConfig& cfg);

struct BenchCell {
    std::size_t rows = 0;
    std::size_t attrs = 0;
    std::vector<double> samples_ms;
    double mean_ms = 0.0;
};

/// Mean swipe wall-clock time (majority voting) per (rows, attrs) cell.
/// Generation is excluded from timing; repetition r uses seed + r.
std::vector<BenchCell> run_bench(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& attrs,
                                 std::size_t repetitions, std::uint64_t seed);

}  // namespace swipe
