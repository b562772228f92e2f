#include "fv/exact_solver.hpp"

#include <algorithm>
#include <limits>

namespace fv {

long long count_bounded_subsets(long long n, long long k) {
    if (n < 0 || k < 0) throw ContractError("subset counting needs nonnegative arguments");
    k = std::min(k, n);
    const __int128 cap = std::numeric_limits<long long>::max();
    __int128 total = 0;
    __int128 binom = 1;
    for (long long j = 0;; ++j) {
        total += binom;
        if (total >= cap) return std::numeric_limits<long long>::max();
        if (j == k) break;
        binom = binom * (n - j) / (j + 1);
        if (binom >= cap) return std::numeric_limits<long long>::max();
    }
    return static_cast<long long>(total);
}

long long count_bipartitions(long long n) {
    if (n < 0) throw ContractError("bipartition counting needs a nonnegative size");
    if (n <= 1) return 1;
    if (n - 1 >= 63) return std::numeric_limits<long long>::max();
    return 1LL << (n - 1);
}

void for_each_bounded_subset(int n, int k,
                             const std::function<bool(const std::vector<int>&)>& visit) {
    if (n < 0 || k < 0) throw ContractError("subset enumeration needs nonnegative bounds");
    k = std::min(k, n);
    std::vector<int> pick;
    for (int size = 0; size <= k; ++size) {
        pick.resize(size);
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            if (!visit(pick)) return;
            int i = size - 1;
            while (i >= 0 && pick[i] == n - size + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
}

std::vector<std::vector<int>> enumerate_bounded_subsets(int n, int k) {
    if (count_bounded_subsets(n, k) > (1LL << 20))
        throw TooLargeError("refusing to materialize more than 2^20 subsets");
    std::vector<std::vector<int>> all;
    for_each_bounded_subset(n, k, [&](const std::vector<int>& pick) {
        all.push_back(pick);
        return true;
    });
    return all;
}

void for_each_bipartition(int n,
                          const std::function<bool(const std::vector<uint8_t>&)>& visit) {
    if (n < 0) throw ContractError("bipartition enumeration needs a nonnegative size");
    std::vector<uint8_t> in_second(n, 0);
    if (n <= 1) {
        visit(in_second);
        return;
    }
    if (n - 1 >= 63)
        throw TooLargeError("cannot iterate bipartitions of " + std::to_string(n) + " elements");
    const uint64_t end = 1ULL << (n - 1);
    for (uint64_t mask = 0; mask < end; ++mask) {
        for (int i = 1; i < n; ++i) in_second[i] = (mask >> (i - 1)) & 1u;
        if (!visit(in_second)) return;
    }
}

namespace {

struct WinnerEval {
    Resolution resolution = Resolution::ApprovalFallback;
    int level = 0;
    Score top_score = 0;
    std::vector<int> winners;
};

// Reusable scoring buffer. bucket_[pos][c] counts the ballots that place
// candidate c at position pos once the roster filter is applied.
class Scratch {
  public:
    void begin(int m) {
        m_ = m;
        bucket_.assign(static_cast<size_t>(m + 1) * m, 0);
        cum_.assign(m, 0);
    }

    void add(const std::vector<int>& ranked, Score weight, const std::vector<uint8_t>* keep) {
        int pos = 0;
        for (int c : ranked) {
            if (keep && !(*keep)[c]) continue;
            ++pos;
            bucket_[static_cast<size_t>(pos) * m_ + c] += weight;
        }
    }

    void eval(Score voters, const std::vector<uint8_t>* keep, WinnerEval& out) {
        out.winners.clear();
        int kept = 0;
        for (int c = 0; c < m_; ++c) kept += !keep || (*keep)[c];
        if (kept == 0) {
            out.resolution = Resolution::ApprovalFallback;
            out.level = 0;
            out.top_score = 0;
            return;
        }
        const Score maj = majority_threshold(voters);
        std::fill(cum_.begin(), cum_.end(), 0);
        for (int level = 1; level <= kept; ++level) {
            bool reached = false;
            const Score* row = &bucket_[static_cast<size_t>(level) * m_];
            for (int c = 0; c < m_; ++c) {
                if (keep && !(*keep)[c]) continue;
                cum_[c] += row[c];
                if (cum_[c] >= maj) reached = true;
            }
            if (reached) {
                collect(keep, Resolution::MajorityLevel, level, out);
                return;
            }
        }
        collect(keep, Resolution::ApprovalFallback, 0, out);
    }

  private:
    void collect(const std::vector<uint8_t>* keep, Resolution resolution, int level,
                 WinnerEval& out) {
        Score top = std::numeric_limits<Score>::min();
        for (int c = 0; c < m_; ++c) {
            if (keep && !(*keep)[c]) continue;
            top = std::max(top, cum_[c]);
        }
        for (int c = 0; c < m_; ++c) {
            if (keep && !(*keep)[c]) continue;
            if (cum_[c] == top) out.winners.push_back(c);
        }
        out.resolution = resolution;
        out.level = level;
        out.top_score = top;
    }

    int m_ = 0;
    std::vector<Score> bucket_, cum_;
};

void eval_roster(const Election& e, const std::vector<uint8_t>& keep, Scratch& scratch,
                 WinnerEval& out) {
    scratch.begin(e.candidate_count());
    for (const Ballot& b : e.ballots()) scratch.add(b.ranked, b.multiplicity, &keep);
    scratch.eval(e.voter_count(), &keep, out);
}

bool eval_goal(const ControlInstance& inst, const WinnerEval& eval) {
    const bool unique = eval.winners.size() == 1 && eval.winners[0] == inst.target;
    return inst.type.goal == Goal::Constructive ? unique : !unique;
}

// Individual indices 0..total-1 mapped to their ballot group.
std::vector<int> expand_individuals(const std::vector<Ballot>& groups, Score total,
                                    const char* what) {
    if (total > (1LL << 26))
        throw TooLargeError(std::string("refusing to expand ") + what + " of " +
                            std::to_string(total) + " individual voters");
    std::vector<int> group_of;
    group_of.reserve(static_cast<size_t>(total));
    for (size_t g = 0; g < groups.size(); ++g)
        for (Score i = 0; i < groups[g].multiplicity; ++i)
            group_of.push_back(static_cast<int>(g));
    return group_of;
}

SolveReport solve_add_candidates(const ControlInstance& inst, const SolveLimits& limits) {
    const Election& e = inst.election;
    const int m = e.candidate_count();
    const int p = static_cast<int>(inst.spoilers.size());
    const long long cap = inst.type.action == Action::AddCandidates
                              ? std::min<long long>(*inst.budget, p)
                              : p;
    if (count_bounded_subsets(p, cap) > limits.max_subsets)
        throw TooLargeError("add-candidates search exceeds the subset cap");

    std::vector<uint8_t> keep(m, 1);
    for (int s : inst.spoilers) keep[s] = 0;

    SolveReport report;
    Scratch scratch;
    WinnerEval eval;
    for_each_bounded_subset(p, static_cast<int>(cap), [&](const std::vector<int>& pick) {
        for (int j : pick) keep[inst.spoilers[j]] = 1;
        eval_roster(e, keep, scratch, eval);
        ++report.explored;
        const bool ok = eval_goal(inst, eval);
        if (ok) {
            std::vector<int> added;
            added.reserve(pick.size());
            for (int j : pick) added.push_back(inst.spoilers[j]);
            std::sort(added.begin(), added.end());
            report.decision = true;
            report.witness = AddedCandidates{std::move(added)};
        }
        for (int j : pick) keep[inst.spoilers[j]] = 0;
        return !ok;
    });
    return report;
}

SolveReport solve_delete_candidates(const ControlInstance& inst, const SolveLimits& limits) {
    const Election& e = inst.election;
    const int m = e.candidate_count();
    std::vector<int> others;
    for (int c = 0; c < m; ++c)
        if (c != inst.target) others.push_back(c);
    const long long cap = std::min<long long>(*inst.budget, others.size());
    if (count_bounded_subsets(static_cast<long long>(others.size()), cap) > limits.max_subsets)
        throw TooLargeError("delete-candidates search exceeds the subset cap");

    std::vector<uint8_t> keep(m, 1);
    SolveReport report;
    Scratch scratch;
    WinnerEval eval;
    for_each_bounded_subset(static_cast<int>(others.size()), static_cast<int>(cap),
                            [&](const std::vector<int>& pick) {
                                for (int j : pick) keep[others[j]] = 0;
                                eval_roster(e, keep, scratch, eval);
                                ++report.explored;
                                const bool ok = eval_goal(inst, eval);
                                if (ok) {
                                    std::vector<int> deleted;
                                    deleted.reserve(pick.size());
                                    for (int j : pick) deleted.push_back(others[j]);
                                    std::sort(deleted.begin(), deleted.end());
                                    report.decision = true;
                                    report.witness = DeletedCandidates{std::move(deleted)};
                                }
                                for (int j : pick) keep[others[j]] = 1;
                                return !ok;
                            });
    return report;
}

SolveReport solve_partition_candidates(const ControlInstance& inst, const SolveLimits& limits) {
    const Election& e = inst.election;
    const int m = e.candidate_count();
    if (count_bipartitions(m) > limits.max_partitions)
        throw TooLargeError("candidate-partition search exceeds the partition cap");

    const bool runoff = inst.type.action == Action::RunoffPartitionCandidates;
    const TieRule tie = *inst.type.tie_rule;

    SolveReport report;
    Scratch scratch;
    WinnerEval first_eval, second_eval, final_eval;
    std::vector<uint8_t> final_keep(m);

    auto try_orientation = [&](const std::vector<uint8_t>& first_keep,
                               const std::vector<uint8_t>& second_keep) {
        eval_roster(e, first_keep, scratch, first_eval);
        std::fill(final_keep.begin(), final_keep.end(), 0);
        if (!(tie == TieRule::TiesEliminate && first_eval.winners.size() != 1))
            for (int c : first_eval.winners) final_keep[c] = 1;
        if (runoff) {
            eval_roster(e, second_keep, scratch, second_eval);
            if (!(tie == TieRule::TiesEliminate && second_eval.winners.size() != 1))
                for (int c : second_eval.winners) final_keep[c] = 1;
        } else {
            for (int c = 0; c < m; ++c)
                if (second_keep[c]) final_keep[c] = 1;
        }
        eval_roster(e, final_keep, scratch, final_eval);
        ++report.explored;
        if (!eval_goal(inst, final_eval)) return false;
        CandidatePartition witness;
        for (int c = 0; c < m; ++c)
            (first_keep[c] ? witness.first : witness.second).push_back(c);
        report.decision = true;
        report.witness = std::move(witness);
        return true;
    };

    std::vector<uint8_t> keep_a(m), keep_b(m);
    for_each_bipartition(m, [&](const std::vector<uint8_t>& in_second) {
        for (int c = 0; c < m; ++c) {
            keep_a[c] = !in_second[c];
            keep_b[c] = in_second[c];
        }
        if (try_orientation(keep_a, keep_b)) return false;
        // the one-round action is orientation-sensitive, so test the flip too
        if (!runoff && try_orientation(keep_b, keep_a)) return false;
        return true;
    });
    return report;
}

SolveReport solve_change_voters(const ControlInstance& inst, const SolveLimits& limits) {
    const Election& e = inst.election;
    const int m = e.candidate_count();
    const bool adding = inst.type.action == Action::AddVoters;
    const std::vector<Ballot>& groups = adding ? inst.pool : e.ballots();
    Score total = 0;
    for (const Ballot& b : groups) total += b.multiplicity;

    const long long cap = std::min<long long>(*inst.budget, total);
    if (count_bounded_subsets(total, cap) > limits.max_subsets)
        throw TooLargeError("voter-change search exceeds the subset cap");

    SolveReport report;
    Scratch scratch;
    WinnerEval eval;
    const std::vector<int> group_of =
        cap > 0 ? expand_individuals(groups, total, adding ? "a voter pool" : "an electorate")
                : std::vector<int>{};

    for_each_bounded_subset(static_cast<int>(cap > 0 ? total : 0), static_cast<int>(cap),
                            [&](const std::vector<int>& pick) {
                                scratch.begin(m);
                                for (const Ballot& b : e.ballots())
                                    scratch.add(b.ranked, b.multiplicity, nullptr);
                                for (int j : pick)
                                    scratch.add(groups[group_of[j]].ranked, adding ? 1 : -1,
                                                nullptr);
                                const Score voters =
                                    e.voter_count() +
                                    (adding ? 1 : -1) * static_cast<Score>(pick.size());
                                scratch.eval(voters, nullptr, eval);
                                ++report.explored;
                                const bool ok = eval_goal(inst, eval);
                                if (ok) {
                                    std::vector<long long> chosen(pick.begin(), pick.end());
                                    report.decision = true;
                                    if (adding)
                                        report.witness = AddedVoters{std::move(chosen)};
                                    else
                                        report.witness = DeletedVoters{std::move(chosen)};
                                }
                                return !ok;
                            });
    return report;
}

SolveReport solve_partition_voters(const ControlInstance& inst, const SolveLimits& limits) {
    const Election& e = inst.election;
    const int m = e.candidate_count();
    const Score total = e.voter_count();
    if (count_bipartitions(total) > limits.max_partitions)
        throw TooLargeError("voter-partition search exceeds the partition cap");

    const TieRule tie = *inst.type.tie_rule;
    const std::vector<int> group_of = expand_individuals(e.ballots(), total, "an electorate");
    const int n = static_cast<int>(total);

    SolveReport report;
    Scratch side1, side2;
    WinnerEval eval1, eval2, final_eval;
    std::vector<uint8_t> final_keep(m);

    for_each_bipartition(n, [&](const std::vector<uint8_t>& in_second) {
        side1.begin(m);
        side2.begin(m);
        Score voters1 = 0;
        for (int i = 0; i < n; ++i) {
            const Ballot& b = e.ballots()[group_of[i]];
            if (in_second[i]) {
                side2.add(b.ranked, 1, nullptr);
            } else {
                side1.add(b.ranked, 1, nullptr);
                ++voters1;
            }
        }
        side1.eval(voters1, nullptr, eval1);
        side2.eval(total - voters1, nullptr, eval2);

        std::fill(final_keep.begin(), final_keep.end(), 0);
        if (!(tie == TieRule::TiesEliminate && eval1.winners.size() != 1))
            for (int c : eval1.winners) final_keep[c] = 1;
        if (!(tie == TieRule::TiesEliminate && eval2.winners.size() != 1))
            for (int c : eval2.winners) final_keep[c] = 1;
        eval_roster(e, final_keep, side1, final_eval);
        ++report.explored;
        if (!eval_goal(inst, final_eval)) return true;

        VoterPartition witness;
        for (int i = 0; i < n; ++i)
            if (!in_second[i]) witness.first_voters.push_back(i);
        report.decision = true;
        report.witness = std::move(witness);
        return false;
    });
    return report;
}

}  // namespace

SolveReport solve_exact(const ControlInstance& instance, const SolveLimits& limits) {
    validate_instance(instance);
    switch (instance.type.action) {
        case Action::AddCandidatesUnlimited:
        case Action::AddCandidates:
            return solve_add_candidates(instance, limits);
        case Action::DeleteCandidates:
            return solve_delete_candidates(instance, limits);
        case Action::PartitionCandidates:
        case Action::RunoffPartitionCandidates:
            return solve_partition_candidates(instance, limits);
        case Action::AddVoters:
        case Action::DeleteVoters:
            return solve_change_voters(instance, limits);
        case Action::PartitionVoters:
            return solve_partition_voters(instance, limits);
    }
    throw InternalError("unhandled control action");
}

}  // namespace fv
