#pragma once

#include <string>
#include <vector>

#include "fv/election.hpp"

namespace fv {

// Outcome of a polynomial-time destructive voter-control routine. When
// `possible` is true, `voters` lists the individual voters to add (from the
// pool) or to delete (from the electorate); the set is verified against the
// full winner rule before it is returned. `stage_level` reports the majority
// level at which the target is dethroned, or 0 when the answer came from the
// trivial check or from the approval-fallback stage. `checks` counts the
// feasibility tests performed, which stays polynomial in the input size.
struct PolyResult {
    bool possible = false;
    std::vector<long long> voters;
    int stage_level = 0;
    std::string note;
    long long checks = 0;
};

// Decides whether registering at most `budget` voters from `pool` can prevent
// `target` from being the unique winner, and produces a verified set when the
// answer is yes. Runs in time polynomial in candidates + voters + pool size.
PolyResult solve_destructive_add_voters(const Election& registered,
                                        const std::vector<Ballot>& pool, int target,
                                        Score budget);

// Mirror image: decides whether removing at most `budget` registered voters
// can prevent `target` from being the unique winner.
PolyResult solve_destructive_delete_voters(const Election& registered, int target,
                                           Score budget);

}  // namespace fv
