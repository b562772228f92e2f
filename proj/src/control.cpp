#include "fv/control.hpp"

#include <algorithm>
#include <unordered_map>

namespace fv {

bool action_is_partition(Action action) {
    switch (action) {
        case Action::PartitionCandidates:
        case Action::RunoffPartitionCandidates:
        case Action::PartitionVoters:
            return true;
        default:
            return false;
    }
}

bool action_requires_budget(Action action) {
    switch (action) {
        case Action::AddCandidates:
        case Action::DeleteCandidates:
        case Action::AddVoters:
        case Action::DeleteVoters:
            return true;
        default:
            return false;
    }
}

namespace {

const char* action_fragment(Action action) {
    switch (action) {
        case Action::AddCandidatesUnlimited: return "add-candidates-unlimited";
        case Action::AddCandidates: return "add-candidates";
        case Action::DeleteCandidates: return "delete-candidates";
        case Action::PartitionCandidates: return "partition-candidates";
        case Action::RunoffPartitionCandidates: return "runoff-partition-candidates";
        case Action::AddVoters: return "add-voters";
        case Action::DeleteVoters: return "delete-voters";
        case Action::PartitionVoters: return "partition-voters";
    }
    throw InternalError("unhandled action");
}

}  // namespace

std::string control_code(const ControlType& type) {
    std::string code = type.goal == Goal::Constructive ? "constructive-" : "destructive-";
    code += action_fragment(type.action);
    if (action_is_partition(type.action)) {
        if (!type.tie_rule) throw ContractError("partition control needs a tie rule");
        code += *type.tie_rule == TieRule::TiesEliminate ? "-te" : "-tp";
    } else if (type.tie_rule) {
        throw ContractError("tie rule is only meaningful for partition control");
    }
    return code;
}

const std::vector<ControlType>& all_control_types() {
    static const std::vector<ControlType> types = [] {
        std::vector<ControlType> list;
        for (Action action : {Action::AddCandidatesUnlimited, Action::AddCandidates,
                              Action::DeleteCandidates, Action::PartitionCandidates,
                              Action::RunoffPartitionCandidates, Action::AddVoters,
                              Action::DeleteVoters, Action::PartitionVoters}) {
            for (Goal goal : {Goal::Constructive, Goal::Destructive}) {
                if (action_is_partition(action)) {
                    list.push_back({action, goal, TieRule::TiesEliminate});
                    list.push_back({action, goal, TieRule::TiesPromote});
                } else {
                    list.push_back({action, goal, std::nullopt});
                }
            }
        }
        return list;
    }();
    return types;
}

ControlType parse_control_code(const std::string& code) {
    for (const ControlType& type : all_control_types())
        if (control_code(type) == code) return type;
    throw ContractError("unknown control type: " + code);
}

void validate_instance(const ControlInstance& instance) {
    const Election& e = instance.election;
    const Action action = instance.type.action;

    if (action_is_partition(action) != instance.type.tie_rule.has_value())
        throw ContractError("tie rule must be given exactly for partition control");
    if (instance.target < 0 || instance.target >= e.candidate_count())
        throw ContractError("target candidate index out of range");

    if (action_requires_budget(action)) {
        if (!instance.budget) throw ContractError("control type " + control_code(instance.type) +
                                                  " needs a budget");
        if (*instance.budget < 0) throw ContractError("budget must be nonnegative");
    } else if (instance.budget) {
        throw ContractError("control type " + control_code(instance.type) +
                            " does not take a budget");
    }

    const bool adding_candidates =
        action == Action::AddCandidates || action == Action::AddCandidatesUnlimited;
    if (!adding_candidates && !instance.spoilers.empty())
        throw ContractError("spoiler candidates only apply to add-candidates control");
    if (adding_candidates) {
        std::vector<char> seen(e.candidate_count(), 0);
        for (int s : instance.spoilers) {
            if (s < 0 || s >= e.candidate_count())
                throw ContractError("spoiler index out of range: " + std::to_string(s));
            if (seen[s]) throw ContractError("spoiler listed twice: " + e.candidate_name(s));
            seen[s] = 1;
        }
        if (seen[instance.target])
            throw ContractError("the target must be a qualified candidate, not a spoiler");
    }

    if (action == Action::AddVoters) {
        for (const Ballot& b : instance.pool) {
            if (b.multiplicity < 1) throw ContractError("pool multiplicity must be positive");
            std::vector<char> seen(e.candidate_count(), 0);
            for (int c : b.ranked) {
                if (c < 0 || c >= e.candidate_count())
                    throw ContractError("pool ballot ranks unknown candidate index " +
                                        std::to_string(c));
                if (seen[c])
                    throw ContractError("pool ballot ranks " + e.candidate_name(c) + " twice");
                seen[c] = 1;
            }
        }
    } else if (!instance.pool.empty()) {
        throw ContractError("an unregistered-voter pool only applies to add-voters control");
    }
}

std::vector<Score> group_counts_from_individuals(const std::vector<Ballot>& ballots,
                                                 const std::vector<long long>& individuals) {
    Score total = 0;
    for (const Ballot& b : ballots) total += b.multiplicity;

    std::vector<long long> sorted = individuals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ContractError("an individual voter is listed twice");
    if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= total))
        throw ContractError("individual voter index out of range");

    std::vector<Score> counts(ballots.size(), 0);
    size_t group = 0;
    Score group_end = ballots.empty() ? 0 : ballots[0].multiplicity;
    for (long long ind : sorted) {
        while (ind >= group_end) {
            ++group;
            group_end += ballots[group].multiplicity;
        }
        ++counts[group];
    }
    return counts;
}

Election take_voters(const Election& e, const std::vector<Score>& per_group) {
    if (per_group.size() != e.ballots().size())
        throw ContractError("per-group counts do not match the ballot groups");
    Election out(e.candidates());
    for (size_t g = 0; g < per_group.size(); ++g) {
        const Ballot& b = e.ballots()[g];
        if (per_group[g] < 0 || per_group[g] > b.multiplicity)
            throw ContractError("per-group count out of range");
        if (per_group[g] > 0) out.add_ballot(b.ranked, per_group[g]);
    }
    return out;
}

Election drop_voters(const Election& e, const std::vector<Score>& per_group) {
    if (per_group.size() != e.ballots().size())
        throw ContractError("per-group counts do not match the ballot groups");
    std::vector<Score> keep(per_group.size());
    for (size_t g = 0; g < per_group.size(); ++g) {
        if (per_group[g] < 0 || per_group[g] > e.ballots()[g].multiplicity)
            throw ContractError("per-group count out of range");
        keep[g] = e.ballots()[g].multiplicity - per_group[g];
    }
    return take_voters(e, keep);
}

Election with_added_voters(const Election& e, const std::vector<Ballot>& pool,
                           const std::vector<Score>& per_group) {
    if (per_group.size() != pool.size())
        throw ContractError("per-group counts do not match the pool groups");
    Election out = e;
    for (size_t g = 0; g < pool.size(); ++g) {
        if (per_group[g] < 0 || per_group[g] > pool[g].multiplicity)
            throw ContractError("per-group count out of range");
        if (per_group[g] > 0) out.add_ballot(pool[g].ranked, per_group[g]);
    }
    return out;
}

WinnerResult winners_within(const Election& e, const std::vector<int>& roster) {
    std::vector<int> order = roster;
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    WinnerResult result = e.restrict(order).fallback_winners();
    for (int& w : result.winners) w = order[w];  // back to original indices
    return result;
}

bool goal_met(Goal goal, int target, const WinnerResult& result) {
    const bool unique = result.winners.size() == 1 && result.winners[0] == target;
    return goal == Goal::Constructive ? unique : !unique;
}

namespace {

std::vector<int> promote(const WinnerResult& result, TieRule tie_rule) {
    if (tie_rule == TieRule::TiesEliminate && result.winners.size() != 1) return {};
    return result.winners;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> all = a;
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

}  // namespace

PartitionOutcome evaluate_candidate_partition(const Election& e, const std::vector<int>& first,
                                              const std::vector<int>& second, TieRule tie_rule,
                                              bool runoff) {
    std::vector<char> where(e.candidate_count(), 0);
    for (int c : first) {
        if (c < 0 || c >= e.candidate_count())
            throw ContractError("partition candidate index out of range");
        if (where[c]) throw ContractError("candidate listed twice in the partition");
        where[c] = 1;
    }
    for (int c : second) {
        if (c < 0 || c >= e.candidate_count())
            throw ContractError("partition candidate index out of range");
        if (where[c]) throw ContractError("candidate listed twice in the partition");
        where[c] = 2;
    }
    for (int c = 0; c < e.candidate_count(); ++c)
        if (!where[c])
            throw ContractError("partition misses candidate " + e.candidate_name(c));

    PartitionOutcome out;
    out.side1 = winners_within(e, first);
    out.promoted1 = promote(out.side1, tie_rule);
    if (runoff) {
        out.side2 = winners_within(e, second);
        out.promoted2 = promote(out.side2, tie_rule);
    } else {
        out.promoted2 = second;  // seated without a first round
        std::sort(out.promoted2.begin(), out.promoted2.end());
    }
    out.finalists = sorted_union(out.promoted1, out.promoted2);
    out.final_round = winners_within(e, out.finalists);
    return out;
}

PartitionOutcome evaluate_voter_partition_counts(const Election& e,
                                                 const std::vector<Score>& first_per_group,
                                                 TieRule tie_rule) {
    PartitionOutcome out;
    out.side1 = take_voters(e, first_per_group).fallback_winners();
    out.side2 = drop_voters(e, first_per_group).fallback_winners();
    out.promoted1 = promote(out.side1, tie_rule);
    out.promoted2 = promote(out.side2, tie_rule);
    out.finalists = sorted_union(out.promoted1, out.promoted2);
    out.final_round = winners_within(e, out.finalists);
    return out;
}

PartitionOutcome evaluate_voter_partition(const Election& e,
                                          const std::vector<long long>& first_voters,
                                          TieRule tie_rule) {
    return evaluate_voter_partition_counts(
        e, group_counts_from_individuals(e.ballots(), first_voters), tie_rule);
}

namespace {

WinnerResult apply_added_candidates(const ControlInstance& inst, const AddedCandidates& w) {
    std::vector<char> is_spoiler(inst.election.candidate_count(), 0);
    for (int s : inst.spoilers) is_spoiler[s] = 1;
    std::vector<char> added(inst.election.candidate_count(), 0);
    for (int c : w.candidates) {
        if (c < 0 || c >= inst.election.candidate_count() || !is_spoiler[c])
            throw ContractError("witness adds a candidate that is not a spoiler");
        if (added[c]) throw ContractError("witness adds a candidate twice");
        added[c] = 1;
    }
    if (inst.type.action == Action::AddCandidates &&
        static_cast<Score>(w.candidates.size()) > *inst.budget)
        throw ContractError("witness exceeds the add-candidates budget");

    std::vector<int> roster;
    for (int c = 0; c < inst.election.candidate_count(); ++c)
        if (!is_spoiler[c] || added[c]) roster.push_back(c);
    return winners_within(inst.election, roster);
}

WinnerResult apply_deleted_candidates(const ControlInstance& inst, const DeletedCandidates& w) {
    std::vector<char> deleted(inst.election.candidate_count(), 0);
    for (int c : w.candidates) {
        if (c < 0 || c >= inst.election.candidate_count())
            throw ContractError("witness deletes an unknown candidate");
        if (deleted[c]) throw ContractError("witness deletes a candidate twice");
        deleted[c] = 1;
    }
    if (deleted[inst.target])
        throw ContractError("the target candidate can never be deleted");
    if (static_cast<Score>(w.candidates.size()) > *inst.budget)
        throw ContractError("witness exceeds the delete-candidates budget");

    std::vector<int> roster;
    for (int c = 0; c < inst.election.candidate_count(); ++c)
        if (!deleted[c]) roster.push_back(c);
    return winners_within(inst.election, roster);
}

}  // namespace

WinnerResult apply_witness(const ControlInstance& instance, const Witness& witness) {
    validate_instance(instance);
    switch (instance.type.action) {
        case Action::AddCandidatesUnlimited:
        case Action::AddCandidates: {
            const auto* w = std::get_if<AddedCandidates>(&witness);
            if (!w) throw ContractError("witness kind does not match add-candidates control");
            return apply_added_candidates(instance, *w);
        }
        case Action::DeleteCandidates: {
            const auto* w = std::get_if<DeletedCandidates>(&witness);
            if (!w) throw ContractError("witness kind does not match delete-candidates control");
            return apply_deleted_candidates(instance, *w);
        }
        case Action::AddVoters: {
            const auto* w = std::get_if<AddedVoters>(&witness);
            if (!w) throw ContractError("witness kind does not match add-voters control");
            if (static_cast<Score>(w->pool_voters.size()) > *instance.budget)
                throw ContractError("witness exceeds the add-voters budget");
            const auto counts = group_counts_from_individuals(instance.pool, w->pool_voters);
            return with_added_voters(instance.election, instance.pool, counts).fallback_winners();
        }
        case Action::DeleteVoters: {
            const auto* w = std::get_if<DeletedVoters>(&witness);
            if (!w) throw ContractError("witness kind does not match delete-voters control");
            if (static_cast<Score>(w->voters.size()) > *instance.budget)
                throw ContractError("witness exceeds the delete-voters budget");
            const auto counts =
                group_counts_from_individuals(instance.election.ballots(), w->voters);
            return drop_voters(instance.election, counts).fallback_winners();
        }
        case Action::PartitionCandidates:
        case Action::RunoffPartitionCandidates: {
            const auto* w = std::get_if<CandidatePartition>(&witness);
            if (!w) throw ContractError("witness kind does not match candidate-partition control");
            return evaluate_candidate_partition(
                       instance.election, w->first, w->second, *instance.type.tie_rule,
                       instance.type.action == Action::RunoffPartitionCandidates)
                .final_round;
        }
        case Action::PartitionVoters: {
            const auto* w = std::get_if<VoterPartition>(&witness);
            if (!w) throw ContractError("witness kind does not match voter-partition control");
            return evaluate_voter_partition(instance.election, w->first_voters,
                                            *instance.type.tie_rule)
                .final_round;
        }
    }
    throw InternalError("unhandled control action");
}

}  // namespace fv
