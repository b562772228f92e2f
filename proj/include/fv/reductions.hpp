#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fv/control.hpp"
#include "fv/exact_solver.hpp"

namespace fv {

// Does some set of at most `bound` universe elements intersect every listed
// subset? Universe elements are 0..universe_size-1; sets must be nonempty.
struct HittingSetInstance {
    int universe_size = 0;
    std::vector<std::vector<int>> sets;
    int bound = 0;
};

// Can the universe 0..3m-1 be covered by m pairwise disjoint sets chosen from
// `sets`? Every listed set has exactly three distinct elements.
struct X3CInstance {
    int m = 0;
    std::vector<std::vector<int>> sets;
};

void validate_hitting_set(const HittingSetInstance& hs);
void validate_x3c(const X3CInstance& x3c);

// Reference deciders, exponential in the worst case. The hitting-set oracle
// returns the first qualifying set in size order then lexicographic order;
// the cover oracle returns the first qualifying list of set indices.
std::optional<std::vector<int>> hs_oracle(const HittingSetInstance& hs);
std::optional<std::vector<int>> x3c_oracle(const X3CInstance& x3c);

// Instance builders. Each returns a ready-to-solve control instance whose
// answer is yes exactly when the source instance is a yes instance. Builders
// check their own preconditions and throw ContractError when violated.

// Hitting set -> adding candidates (limited or not, either goal). The chair
// may add ballot-listed universe candidates next to a fixed qualified trio.
ControlInstance reduce_candidate_control_adding(const HittingSetInstance& hs, Goal goal,
                                                bool limited);
// Hitting set -> destructive deletion of at most m-k candidates.
ControlInstance reduce_candidate_control_deleting_destructive(const HittingSetInstance& hs);
// Hitting set -> any of the eight candidate-partition variants.
ControlInstance reduce_candidate_control_partition(const HittingSetInstance& hs, Goal goal,
                                                   TieRule tie, bool runoff);
// Hitting set -> constructive deletion of at most k candidates. Rejects
// instances where some set is larger than |sets| + bound.
ControlInstance reduce_deleting_candidates_constructive(const HittingSetInstance& hs);
// Exact cover -> constructive addition of at most m pool voters (needs m >= 2).
ControlInstance reduce_adding_voters(const X3CInstance& x3c);
// Exact cover -> constructive deletion of at most m voters.
ControlInstance reduce_deleting_voters(const X3CInstance& x3c);
// Exact cover -> constructive voter partition, ties eliminate.
ControlInstance reduce_partition_voters_te(const X3CInstance& x3c);
// Exact cover -> constructive voter partition, ties promote (needs |sets| > m+1).
ControlInstance reduce_partition_voters_tp(const X3CInstance& x3c);
// Hitting set -> destructive voter partition, ties promote.
ControlInstance reduce_destructive_partition_voters_tp(const HittingSetInstance& hs);

enum class ReductionKind {
    CandidateControlAdding,
    CandidateControlDeletingDestructive,
    CandidateControlPartition,
    DeletingCandidatesConstructive,
    AddingVoters,
    DeletingVoters,
    PartitionVotersTe,
    PartitionVotersTp,
    DestructivePartitionVotersTp,
};

const std::vector<ReductionKind>& all_reduction_kinds();
bool reduction_kind_uses_hitting_set(ReductionKind kind);
std::string reduction_kind_name(ReductionKind kind);
std::optional<ReductionKind> parse_reduction_kind(const std::string& name);

struct VariantOutcome {
    std::string control_code;
    bool decision = false;
    long long explored = 0;
};

// Result of replaying a reduction end to end: the source instance is decided
// by its reference oracle, every control variant the kind covers is decided
// by the exhaustive solver, and a battery of structural self-checks is run on
// the built election (score tables, witness replays, sweep characterizations).
// Structural failures throw InternalError; `agreement` reports whether every
// variant decision matches the source answer.
struct VerificationReport {
    bool source_yes = false;
    std::vector<int> source_witness;
    std::vector<VariantOutcome> variants;
    std::vector<std::string> checks;
    bool agreement = false;
};

VerificationReport verify_reduction(ReductionKind kind, const HittingSetInstance& hs,
                                    const SolveLimits& limits = {});
VerificationReport verify_reduction(ReductionKind kind, const X3CInstance& x3c,
                                    const SolveLimits& limits = {});

}  // namespace fv
