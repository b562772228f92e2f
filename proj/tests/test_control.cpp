#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "fv/control.hpp"
#include "support/fixtures.hpp"

using namespace fv;

namespace {

std::vector<int> ids(const Election& e, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const std::string& name : names) out.push_back(e.candidate_index(name));
    return out;
}

}  // namespace

TEST_CASE("the twenty-two control codes round-trip") {
    const auto& types = all_control_types();
    CHECK(types.size() == 22);
    std::set<std::string> seen;
    for (const ControlType& type : types) {
        const std::string code = control_code(type);
        CHECK(seen.insert(code).second);
        const ControlType back = parse_control_code(code);
        CHECK(back.action == type.action);
        CHECK(back.goal == type.goal);
        CHECK(back.tie_rule == type.tie_rule);
    }
    CHECK(seen.count("constructive-add-candidates-unlimited") == 1);
    CHECK(seen.count("destructive-delete-voters") == 1);
    CHECK(seen.count("constructive-partition-voters-te") == 1);
    CHECK(seen.count("destructive-runoff-partition-candidates-tp") == 1);
}

TEST_CASE("malformed control codes are rejected") {
    CHECK_THROWS_AS(parse_control_code("constructive-partition-candidates"), ContractError);
    CHECK_THROWS_AS(parse_control_code("destructive-add-voters-te"), ContractError);
    CHECK_THROWS_AS(parse_control_code("neutral-delete-candidates"), ContractError);
    CHECK_THROWS_AS(control_code({Action::AddVoters, Goal::Constructive, TieRule::TiesPromote}),
                    ContractError);
    CHECK_THROWS_AS(control_code({Action::PartitionVoters, Goal::Constructive, std::nullopt}),
                    ContractError);
}

TEST_CASE("budget and spoiler rules are enforced per action") {
    ControlInstance inst;
    inst.election = testsupport::example_one();
    inst.target = 0;

    inst.type = parse_control_code("constructive-delete-candidates");
    CHECK_THROWS_AS(validate_instance(inst), ContractError);  // budget missing
    inst.budget = 1;
    CHECK_NOTHROW(validate_instance(inst));
    inst.budget = -1;
    CHECK_THROWS_AS(validate_instance(inst), ContractError);

    inst.type = parse_control_code("constructive-partition-voters-te");
    inst.budget = 1;
    CHECK_THROWS_AS(validate_instance(inst), ContractError);  // budget forbidden
    inst.budget.reset();
    CHECK_NOTHROW(validate_instance(inst));

    inst.spoilers = {1};
    CHECK_THROWS_AS(validate_instance(inst), ContractError);  // spoilers need adding
    inst.type = parse_control_code("constructive-add-candidates-unlimited");
    CHECK_NOTHROW(validate_instance(inst));
    inst.spoilers = {1, 1};
    CHECK_THROWS_AS(validate_instance(inst), ContractError);

    inst.spoilers = {0};  // the target may not be a spoiler
    CHECK_THROWS_AS(validate_instance(inst), ContractError);
}

TEST_CASE("candidate partition promotes c under every tie and round variant") {
    const Election e = testsupport::example_one();
    const std::vector<int> first = ids(e, {"a", "c", "d"});
    const std::vector<int> second = ids(e, {"b"});
    const int c = e.candidate_index("c");
    for (const TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote}) {
        for (const bool runoff : {false, true}) {
            const PartitionOutcome out = evaluate_candidate_partition(e, first, second, tie, runoff);
            CHECK(out.side1.winners == std::vector<int>{c});
            CHECK(out.final_round.winners == std::vector<int>{c});
        }
    }
}

TEST_CASE("one-round candidate partition is orientation sensitive") {
    const Election e = testsupport::example_one();
    const std::vector<int> acd = ids(e, {"a", "c", "d"});
    const std::vector<int> b = ids(e, {"b"});
    const PartitionOutcome acd_first =
        evaluate_candidate_partition(e, acd, b, TieRule::TiesEliminate, false);
    const PartitionOutcome b_first =
        evaluate_candidate_partition(e, b, acd, TieRule::TiesEliminate, false);
    CHECK(acd_first.final_round.winners == ids(e, {"c"}));
    CHECK(b_first.final_round.winners == ids(e, {"a"}));
    // Only the first side holds a first-round sub-election.
    CHECK(acd_first.side2.winners.empty());
    CHECK(acd_first.finalists == ids(e, {"b", "c"}));
}

TEST_CASE("voter partition drops the overall winner from the final") {
    const Election e = testsupport::example_two();
    const int a = e.candidate_index("a");
    for (const TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote}) {
        const PartitionOutcome out = evaluate_voter_partition(e, {0, 1}, tie);
        CHECK(out.side1.winners == ids(e, {"c"}));
        CHECK(out.side2.winners == ids(e, {"b"}));
        CHECK(out.finalists == ids(e, {"b", "c"}));
        CHECK(out.final_round.winners == ids(e, {"c"}));
        CHECK(out.final_round.level == 2);
        CHECK(out.final_round.top_score == 3);
        CHECK(std::find(out.finalists.begin(), out.finalists.end(), a) == out.finalists.end());
    }
}

TEST_CASE("ties eliminate keeps only singleton side winners") {
    Election e(std::vector<std::string>{"a", "b"});
    e.add_ballot(std::vector<std::string>{"a"});
    e.add_ballot(std::vector<std::string>{"b"});
    // Each side elects both candidates on approvals; nothing should survive TE.
    const PartitionOutcome te = evaluate_voter_partition(e, {}, TieRule::TiesEliminate);
    CHECK(te.promoted2.empty());
    // An empty first side elects everyone (no voters, approvals all zero).
    CHECK(te.side1.winners == std::vector<int>{0, 1});
    CHECK(te.promoted1.empty());
    CHECK(te.finalists.empty());
    CHECK(te.final_round.winners.empty());

    const PartitionOutcome tp = evaluate_voter_partition(e, {}, TieRule::TiesPromote);
    CHECK(tp.promoted1 == std::vector<int>{0, 1});
    CHECK(tp.finalists == std::vector<int>{0, 1});
    CHECK(tp.final_round.winners == std::vector<int>{0, 1});
}

TEST_CASE("empty first-round roster seats only the second side") {
    const Election e = testsupport::example_one();
    std::vector<int> everyone = ids(e, {"a", "b", "c", "d"});
    const PartitionOutcome out =
        evaluate_candidate_partition(e, {}, everyone, TieRule::TiesPromote, false);
    CHECK(out.side1.winners.empty());
    CHECK(out.finalists == everyone);
    CHECK(out.final_round.winners == ids(e, {"a"}));
}

TEST_CASE("voter multiplicity groups split at individual granularity") {
    Election e(std::vector<std::string>{"a", "b"});
    e.add_ballot(std::vector<std::string>{"a"}, 3);
    e.add_ballot(std::vector<std::string>{"b"}, 1);
    // Individuals 0,1,2 cast (a); individual 3 casts (b).
    const std::vector<Score> counts = group_counts_from_individuals(e.ballots(), {0, 1, 3});
    CHECK(counts == std::vector<Score>{2, 1});

    const Election side1 = take_voters(e, counts);
    CHECK(side1.voter_count() == 3);
    CHECK(side1.approval_score(0) == 2);
    CHECK(side1.approval_score(1) == 1);

    const Election side2 = drop_voters(e, counts);
    CHECK(side2.voter_count() == 1);
    CHECK(side2.approval_score(0) == 1);
    CHECK(side2.approval_score(1) == 0);
}

TEST_CASE("adding pool voters by per-group counts") {
    Election e(std::vector<std::string>{"a", "b"});
    e.add_ballot(std::vector<std::string>{"a"});
    std::vector<Ballot> pool;
    pool.push_back(Ballot{{1}, 2});
    const Election grown = with_added_voters(e, pool, {2});
    CHECK(grown.voter_count() == 3);
    CHECK(grown.approval_score(1) == 2);
    CHECK_THROWS_AS(with_added_voters(e, pool, {3}), ContractError);
}

TEST_CASE("winners_within reports original candidate indices") {
    const Election e = testsupport::example_one();
    const WinnerResult r = winners_within(e, ids(e, {"a", "c", "d"}));
    CHECK(r.winners == ids(e, {"c"}));
    CHECK(r.level == 2);
    CHECK(r.top_score == 5);
    CHECK(winners_within(e, {}).winners.empty());
}

TEST_CASE("goal_met is unique winnership or its absence") {
    WinnerResult r;
    r.winners = {2};
    CHECK(goal_met(Goal::Constructive, 2, r));
    CHECK(!goal_met(Goal::Destructive, 2, r));
    r.winners = {1, 2};
    CHECK(!goal_met(Goal::Constructive, 2, r));
    CHECK(goal_met(Goal::Destructive, 2, r));
    r.winners = {};
    CHECK(!goal_met(Goal::Constructive, 2, r));
    CHECK(goal_met(Goal::Destructive, 2, r));
}

TEST_CASE("apply_witness replays each action kind") {
    const Election e1 = testsupport::example_one();

    ControlInstance del;
    del.type = parse_control_code("constructive-delete-candidates");
    del.election = e1;
    del.budget = 1;
    del.target = e1.candidate_index("c");
    const WinnerResult after = apply_witness(del, DeletedCandidates{{e1.candidate_index("b")}});
    CHECK(after.winners == ids(e1, {"c"}));
    CHECK(goal_met(Goal::Constructive, del.target, after));

    // Budget overruns, deleting the target, and kind mismatches are rejected.
    CHECK_THROWS_AS(apply_witness(del, DeletedCandidates{{0, 1}}), ContractError);
    CHECK_THROWS_AS(apply_witness(del, DeletedCandidates{{del.target}}), ContractError);
    CHECK_THROWS_AS(apply_witness(del, AddedCandidates{{1}}), ContractError);

    ControlInstance pv;
    pv.type = parse_control_code("constructive-partition-voters-te");
    pv.election = testsupport::example_two();
    pv.target = pv.election.candidate_index("c");
    const WinnerResult split = apply_witness(pv, VoterPartition{{0, 1}});
    CHECK(goal_met(Goal::Constructive, pv.target, split));
    CHECK_THROWS_AS(apply_witness(pv, VoterPartition{{0, 9}}), ContractError);

    ControlInstance av;
    av.type = parse_control_code("destructive-add-voters");
    av.election = Election(std::vector<std::string>{"a", "b"});
    av.election.add_ballot(std::vector<std::string>{"a"});
    av.pool.push_back(Ballot{{1}, 2});
    av.budget = 1;
    av.target = 0;
    const WinnerResult bumped = apply_witness(av, AddedVoters{{0}});
    CHECK(goal_met(Goal::Destructive, av.target, bumped));
    CHECK_THROWS_AS(apply_witness(av, AddedVoters{{0, 1}}), ContractError);  // budget
    CHECK_THROWS_AS(apply_witness(av, AddedVoters{{5}}), ContractError);     // range
}

TEST_CASE("candidate partition witnesses must cover all candidates exactly") {
    ControlInstance inst;
    inst.type = parse_control_code("destructive-partition-candidates-te");
    inst.election = testsupport::example_one();
    inst.target = 0;
    const Election& e = inst.election;
    const WinnerResult out =
        apply_witness(inst, CandidatePartition{ids(e, {"a", "c", "d"}), ids(e, {"b"})});
    CHECK(out.winners == ids(e, {"c"}));
    CHECK_THROWS_AS(apply_witness(inst, CandidatePartition{ids(e, {"a"}), ids(e, {"b"})}),
                    ContractError);
    CHECK_THROWS_AS(apply_witness(inst, CandidatePartition{ids(e, {"a", "b"}), ids(e, {"b", "c", "d"})}),
                    ContractError);
}
