#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fv/election.hpp"

namespace fv {

enum class Goal { Constructive, Destructive };

// What happens to a first-round sub-election that ends in a tie.
enum class TieRule {
    TiesEliminate,  // a side promotes its winner only when it is unique
    TiesPromote,    // a side promotes all of its winners
};

enum class Action {
    AddCandidatesUnlimited,
    AddCandidates,
    DeleteCandidates,
    PartitionCandidates,        // one round: survivors face the untested side
    RunoffPartitionCandidates,  // both sides run, survivors meet in a run-off
    AddVoters,
    DeleteVoters,
    PartitionVoters,
};

bool action_is_partition(Action action);
bool action_requires_budget(Action action);

struct ControlType {
    Action action;
    Goal goal;
    std::optional<TieRule> tie_rule;  // present exactly for partition actions

    friend bool operator==(const ControlType&, const ControlType&) = default;
};

// Kebab-case identifiers such as "constructive-add-voters" or
// "destructive-partition-candidates-te".
std::string control_code(const ControlType& type);
ControlType parse_control_code(const std::string& code);
const std::vector<ControlType>& all_control_types();  // the 22 recognized types

// One concrete control question. For the add-candidates actions, `election`
// already contains the spoiler candidates and every ballot ranks over the
// combined candidate set; `spoilers` lists which candidates the chair may add
// (the rest are qualified and always run). For add-voters, `pool` holds the
// unregistered ballots over the same candidate set.
struct ControlInstance {
    ControlType type;
    Election election;
    std::vector<int> spoilers;
    std::vector<Ballot> pool;
    std::optional<Score> budget;
    int target = 0;
};

void validate_instance(const ControlInstance& instance);

// Individual voters of an election (or a pool) are numbered in ballot order,
// copies within a multiplicity group consecutively. Witnesses that pick voters
// use those individual indices.
struct AddedCandidates {
    std::vector<int> candidates;
    friend bool operator==(const AddedCandidates&, const AddedCandidates&) = default;
};
struct DeletedCandidates {
    std::vector<int> candidates;
    friend bool operator==(const DeletedCandidates&, const DeletedCandidates&) = default;
};
struct AddedVoters {
    std::vector<long long> pool_voters;
    friend bool operator==(const AddedVoters&, const AddedVoters&) = default;
};
struct DeletedVoters {
    std::vector<long long> voters;
    friend bool operator==(const DeletedVoters&, const DeletedVoters&) = default;
};
// `first` is the side that runs the first-round sub-election in the one-round
// action; for the run-off action the sides are symmetric.
struct CandidatePartition {
    std::vector<int> first, second;
    friend bool operator==(const CandidatePartition&, const CandidatePartition&) = default;
};
struct VoterPartition {
    std::vector<long long> first_voters;  // the rest vote on the second side
    friend bool operator==(const VoterPartition&, const VoterPartition&) = default;
};

using Witness = std::variant<AddedCandidates, DeletedCandidates, AddedVoters, DeletedVoters,
                             CandidatePartition, VoterPartition>;

// Helpers for slicing an electorate along individual-voter indices.
std::vector<Score> group_counts_from_individuals(const std::vector<Ballot>& ballots,
                                                 const std::vector<long long>& individuals);
Election take_voters(const Election& e, const std::vector<Score>& per_group);
Election drop_voters(const Election& e, const std::vector<Score>& per_group);
Election with_added_voters(const Election& e, const std::vector<Ballot>& pool,
                           const std::vector<Score>& per_group);

struct PartitionOutcome {
    WinnerResult side1, side2;            // first-round results
    std::vector<int> promoted1, promoted2;  // survivors after the tie rule
    std::vector<int> finalists;           // ascending candidate indices
    WinnerResult final_round;             // winners among finalists, full electorate
};

// `first` and `second` must partition the whole candidate set. In the
// one-round variant only `first` holds a sub-election; `second` is seated
// directly and `side2` is left empty.
PartitionOutcome evaluate_candidate_partition(const Election& e, const std::vector<int>& first,
                                              const std::vector<int>& second, TieRule tie_rule,
                                              bool runoff);

PartitionOutcome evaluate_voter_partition(const Election& e,
                                          const std::vector<long long>& first_voters,
                                          TieRule tie_rule);
PartitionOutcome evaluate_voter_partition_counts(const Election& e,
                                                 const std::vector<Score>& first_per_group,
                                                 TieRule tie_rule);

// Winner determination over a candidate subset of `e`, reported in the
// original candidate indices.
WinnerResult winners_within(const Election& e, const std::vector<int>& roster);

bool goal_met(Goal goal, int target, const WinnerResult& result);

// Outcome of exerting the witnessed control action on the instance. Throws
// ContractError when the witness does not fit the instance (wrong kind,
// budget exceeded, target deleted, not a partition, ...).
WinnerResult apply_witness(const ControlInstance& instance, const Witness& witness);

}  // namespace fv
