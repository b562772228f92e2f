#pragma once

#include <cstdint>
#include <functional>

#include "fv/control.hpp"

namespace fv {

// Hard caps on how many candidate actions an exhaustive solve may explore.
// Exceeding a cap raises TooLargeError before any work is done; results are
// never silently truncated.
struct SolveLimits {
    long long max_subsets = 1LL << 24;
    long long max_partitions = 1LL << 22;
};

struct SolveReport {
    bool decision = false;
    std::optional<Witness> witness;  // first success in enumeration order
    long long explored = 0;          // control actions fully evaluated
};

// Saturating count of subsets with at most `k` of `n` elements.
long long count_bounded_subsets(long long n, long long k);
// Saturating count of unordered bipartitions of an n-element set: 2^(n-1) for
// n >= 1 and 1 for n = 0 (the empty split).
long long count_bipartitions(long long n);

// Visit every subset of {0..n-1} with at most k elements: smaller subsets
// first, lexicographic within a size. Return false from the callback to stop.
void for_each_bounded_subset(int n, int k,
                             const std::function<bool(const std::vector<int>&)>& visit);
std::vector<std::vector<int>> enumerate_bounded_subsets(int n, int k);

// Visit every unordered bipartition of {0..n-1}. Element 0 always sits on the
// first side; `in_second[i]` flags the second side. Masks ascend, so the first
// partition visited is ({0..n-1}, {}). Return false to stop.
void for_each_bipartition(int n,
                          const std::function<bool(const std::vector<uint8_t>&)>& visit);

SolveReport solve_exact(const ControlInstance& instance, const SolveLimits& limits = {});

}  // namespace fv
