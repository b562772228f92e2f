#include "fv/poly_solver.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "fv/control.hpp"

namespace fv {

namespace {

int position_of(const std::vector<int>& ranked, int cand) {
    for (size_t i = 0; i < ranked.size(); ++i)
        if (ranked[i] == cand) return static_cast<int>(i) + 1;
    return 0;
}

int max_ballot_length(const std::vector<Ballot>& ballots) {
    size_t longest = 0;
    for (const Ballot& b : ballots) longest = std::max(longest, b.ranked.size());
    return static_cast<int>(longest);
}

// Cumulative level scores of the registered electorate: score[c][i] counts the
// voters ranking c within the first i positions, with score[c][0] == 0.
std::vector<std::vector<Score>> level_table(const Election& e, int levels) {
    std::vector<std::vector<Score>> score(e.candidate_count(),
                                          std::vector<Score>(levels + 1, 0));
    for (const Ballot& b : e.ballots())
        for (size_t j = 0; j < b.ranked.size(); ++j)
            score[b.ranked[j]][static_cast<int>(j) + 1] += b.multiplicity;
    for (auto& row : score)
        for (int i = 1; i <= levels; ++i) row[i] += row[i - 1];
    return score;
}

std::vector<Score> group_offsets(const std::vector<Ballot>& groups) {
    std::vector<Score> offset(groups.size() + 1, 0);
    for (size_t g = 0; g < groups.size(); ++g)
        offset[g + 1] = offset[g] + groups[g].multiplicity;
    return offset;
}

// A capped ordered slice of a voter population. `total` is the population
// size before capping; `idx` holds the first min(cap, total) individual
// indices in selection order; early[t] counts how many of the first t picks
// rank the guarded candidate at position `cutoff` or earlier (their key).
struct OrderedPick {
    Score total = 0;
    std::vector<long long> idx;
    std::vector<Score> early;
};

OrderedPick collect_individuals(const std::vector<std::pair<int, int>>& keyed_groups,
                                const std::vector<Ballot>& groups,
                                const std::vector<Score>& offset, Score cap, int cutoff) {
    OrderedPick pick;
    pick.early.push_back(0);
    for (const auto& [key, g] : keyed_groups) pick.total += groups[g].multiplicity;
    for (const auto& [key, g] : keyed_groups) {
        for (Score j = 0; j < groups[g].multiplicity; ++j) {
            if (static_cast<Score>(pick.idx.size()) >= cap) return pick;
            pick.idx.push_back(offset[g] + j);
            pick.early.push_back(pick.early.back() + (key >= 1 && key <= cutoff ? 1 : 0));
        }
    }
    return pick;
}

std::vector<long long> joined(const std::vector<long long>& a, Score take_a,
                              const std::vector<long long>& b, Score take_b) {
    std::vector<long long> out(a.begin(), a.begin() + take_a);
    out.insert(out.end(), b.begin(), b.begin() + take_b);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

PolyResult solve_destructive_add_voters(const Election& registered,
                                        const std::vector<Ballot>& pool, int target,
                                        Score budget) {
    ControlInstance inst;
    inst.type = ControlType{Action::AddVoters, Goal::Destructive, std::nullopt};
    inst.election = registered;
    inst.pool = pool;
    inst.budget = budget;
    inst.target = target;
    validate_instance(inst);

    Score pool_total = 0;
    for (const Ballot& b : pool) pool_total += b.multiplicity;
    if (budget > pool_total) throw ContractError("budget exceeds the number of pool voters");
    if (pool_total > (1LL << 24))
        throw TooLargeError("voter pool too large to index individual voters");

    PolyResult res;
    auto finish = [&](std::vector<long long> chosen, int stage, std::string note) {
        if (!goal_met(Goal::Destructive, target, apply_witness(inst, AddedVoters{chosen})))
            throw InternalError("add-voters routine produced a set that fails verification");
        res.possible = true;
        res.voters = std::move(chosen);
        res.stage_level = stage;
        res.note = std::move(note);
        return res;
    };

    if (goal_met(Goal::Destructive, target, registered.fallback_winners()))
        return finish({}, 0, "target is already not the unique winner");

    const int m = registered.candidate_count();
    const int levels =
        std::max(max_ballot_length(registered.ballots()), max_ballot_length(pool));
    const auto score = level_table(registered, levels);
    const Score n_reg = registered.voter_count();
    const Score ell = budget;
    const std::vector<Score> offset = group_offsets(pool);
    const int groups = static_cast<int>(pool.size());

    std::vector<int> pos_c(groups);
    for (int g = 0; g < groups; ++g) pos_c[g] = position_of(pool[g].ranked, target);

    // Majority stages: push some rival to the first strict majority. Pool
    // voters that approve the rival but not the target within the stage window
    // strictly dominate those approving both, so they are spent first; among
    // the rest, spending voters that rank the target latest keeps the target's
    // earlier levels lowest.
    for (int i = 1; i <= levels; ++i) {
        for (int d = 0; d < m; ++d) {
            if (d == target) continue;
            std::vector<std::pair<int, int>> rival_only, both_in;
            for (int g = 0; g < groups; ++g) {
                const int pd = position_of(pool[g].ranked, d);
                if (pd < 1 || pd > i) continue;
                const bool c_in = pos_c[g] >= 1 && pos_c[g] <= i;
                (c_in ? both_in : rival_only).push_back({pos_c[g], g});
            }
            Score rival_total = 0;
            for (const auto& [key, g] : rival_only) rival_total += pool[g].multiplicity;
            const Score p = std::min(ell, rival_total);
            ++res.checks;
            if (score[d][i] + p < score[target][i]) continue;
            const OrderedPick first = collect_individuals(rival_only, pool, offset, p, 0);
            std::stable_sort(both_in.begin(), both_in.end(),
                             [](const auto& a, const auto& b) { return a.first > b.first; });
            const OrderedPick extra = collect_individuals(both_in, pool, offset, ell - p, i - 1);
            const Score tmax = static_cast<Score>(extra.idx.size());
            for (Score t = 0; t <= tmax; ++t) {
                ++res.checks;
                const Score maj = majority_threshold(n_reg + p + t);
                if (score[d][i] + p + t < maj) continue;
                if (score[target][i - 1] + extra.early[t] >= maj) continue;
                return finish(joined(first.idx, p, extra.idx, t), i,
                              "rival " + registered.candidate_name(d) +
                                  " gains a majority at level " + std::to_string(i));
            }
        }
    }

    // Approval stage: dilute every majority away and let a rival tie or beat
    // the target on overall approvals. Only pool voters that disapprove of the
    // target are ever useful here.
    const Score c0 = score[target][levels];
    ++res.checks;
    if (2 * c0 <= n_reg + ell) {
        for (int d = 0; d < m; ++d) {
            if (d == target) continue;
            std::vector<std::pair<int, int>> helpers, fillers;
            for (int g = 0; g < groups; ++g) {
                if (pos_c[g] != 0) continue;
                const int pd = position_of(pool[g].ranked, d);
                (pd != 0 ? helpers : fillers).push_back({0, g});
            }
            const OrderedPick rival = collect_individuals(helpers, pool, offset, ell, 0);
            const OrderedPick filler = collect_individuals(fillers, pool, offset, ell, 0);
            const Score need = std::max<Score>(0, c0 - score[d][levels]);
            const Score xmax = std::min(rival.total, ell);
            for (Score x = need; x <= xmax; ++x) {
                ++res.checks;
                const Score dilute = std::max<Score>(0, 2 * c0 - (n_reg + x));
                if (dilute > std::min(filler.total, ell - x)) continue;
                return finish(joined(rival.idx, x, filler.idx, dilute), 0,
                              "approval fallback leaves " + registered.candidate_name(d) +
                                  " level with or ahead of the target");
            }
        }
    }

    res.note = "no registration of at most " + std::to_string(budget) +
               " pool voters dethrones the target";
    return res;
}

PolyResult solve_destructive_delete_voters(const Election& registered, int target,
                                           Score budget) {
    ControlInstance inst;
    inst.type = ControlType{Action::DeleteVoters, Goal::Destructive, std::nullopt};
    inst.election = registered;
    inst.budget = budget;
    inst.target = target;
    validate_instance(inst);

    if (budget > registered.voter_count())
        throw ContractError("budget exceeds the number of registered voters");
    if (registered.voter_count() > (1LL << 24))
        throw TooLargeError("electorate too large to index individual voters");

    PolyResult res;
    auto finish = [&](std::vector<long long> chosen, int stage, std::string note) {
        if (!goal_met(Goal::Destructive, target, apply_witness(inst, DeletedVoters{chosen})))
            throw InternalError("delete-voters routine produced a set that fails verification");
        res.possible = true;
        res.voters = std::move(chosen);
        res.stage_level = stage;
        res.note = std::move(note);
        return res;
    };

    if (goal_met(Goal::Destructive, target, registered.fallback_winners()))
        return finish({}, 0, "target is already not the unique winner");

    const int m = registered.candidate_count();
    const int levels = max_ballot_length(registered.ballots());
    const auto score = level_table(registered, levels);
    const Score n_reg = registered.voter_count();
    const Score ell = budget;
    const std::vector<Ballot>& electorate = registered.ballots();
    const std::vector<Score> offset = group_offsets(electorate);
    const int groups = static_cast<int>(electorate.size());

    std::vector<int> pos_c(groups);
    for (int g = 0; g < groups; ++g) pos_c[g] = position_of(electorate[g].ranked, target);

    // Majority stages: removing supporters of the target can hand some rival
    // the first strict majority. Within the stage window, voters that support
    // only the target are strictly better deletions than voters that support
    // both, and removing the earliest target approvals first cuts the target's
    // earlier levels the most; the two list prefixes are scanned jointly.
    for (int i = 1; i <= levels; ++i) {
        for (int d = 0; d < m; ++d) {
            if (d == target) continue;
            std::vector<std::pair<int, int>> target_only, both_in;
            for (int g = 0; g < groups; ++g) {
                if (pos_c[g] < 1 || pos_c[g] > i) continue;
                const int pd = position_of(electorate[g].ranked, d);
                const bool d_in = pd >= 1 && pd <= i;
                (d_in ? both_in : target_only).push_back({pos_c[g], g});
            }
            auto by_target_position = [](const auto& a, const auto& b) {
                return a.first < b.first;
            };
            std::stable_sort(target_only.begin(), target_only.end(), by_target_position);
            std::stable_sort(both_in.begin(), both_in.end(), by_target_position);
            const OrderedPick solo = collect_individuals(target_only, electorate, offset, ell, i - 1);
            const OrderedPick both = collect_individuals(both_in, electorate, offset, ell, i - 1);
            const Score t1max = static_cast<Score>(solo.idx.size());
            for (Score t1 = 0; t1 <= t1max; ++t1) {
                ++res.checks;
                if (score[d][i] < score[target][i] - t1) continue;
                const Score t2cap = std::min<Score>(ell - t1, both.total);
                for (Score t2 = 0; t2 <= t2cap; ++t2) {
                    ++res.checks;
                    const Score maj = majority_threshold(n_reg - t1 - t2);
                    if (score[d][i] - t2 < maj) break;
                    if (score[target][i - 1] - solo.early[t1] - both.early[t2] >= maj) continue;
                    return finish(joined(solo.idx, t1, both.idx, t2), i,
                                  "deleting supporters lets rival " +
                                      registered.candidate_name(d) +
                                      " reach a majority at level " + std::to_string(i));
                }
            }
        }
    }

    // Approval stage: delete enough target approvals that no level carries a
    // majority, then let a rival tie or beat the target on overall approvals.
    const Score c0 = score[target][levels];
    ++res.checks;
    const Score deepest = std::min(ell, c0);
    if (c0 - deepest < majority_threshold(n_reg - deepest)) {
        for (int d = 0; d < m; ++d) {
            if (d == target) continue;
            std::vector<std::pair<int, int>> target_only, both_ap;
            for (int g = 0; g < groups; ++g) {
                if (pos_c[g] == 0) continue;
                const int pd = position_of(electorate[g].ranked, d);
                (pd != 0 ? both_ap : target_only).push_back({0, g});
            }
            const OrderedPick solo = collect_individuals(target_only, electorate, offset, ell, 0);
            const OrderedPick both = collect_individuals(both_ap, electorate, offset, ell, 0);
            const Score need = std::max<Score>(0, c0 - score[d][levels]);
            const Score x1max = std::min(solo.total, ell);
            for (Score x1 = need; x1 <= x1max; ++x1) {
                ++res.checks;
                const Score x2 = std::max<Score>(0, 2 * (c0 - x1) - (n_reg - x1));
                if (x2 > std::min(both.total, ell - x1)) continue;
                return finish(joined(solo.idx, x1, both.idx, x2), 0,
                              "approval fallback leaves " + registered.candidate_name(d) +
                                  " level with or ahead of the target");
            }
        }
    }

    res.note = "no deletion of at most " + std::to_string(budget) +
               " voters dethrones the target";
    return res;
}

}  // namespace fv
