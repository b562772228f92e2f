#include "fv/reductions.hpp"

#include <algorithm>
#include <numeric>

namespace fv {

namespace {

std::vector<int> ascending(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::string> numbered(const std::string& prefix, int count) {
    std::vector<std::string> names;
    names.reserve(count);
    for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

void check_family(const std::vector<std::vector<int>>& sets, int universe, bool exact_triples) {
    for (const auto& set : sets) {
        if (set.empty()) throw ContractError("sets must be nonempty");
        if (exact_triples && set.size() != 3)
            throw ContractError("sets must have exactly three elements");
        std::vector<int> sorted = ascending(set);
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] < 0 || sorted[i] >= universe)
                throw ContractError("set element out of range");
            if (i > 0 && sorted[i] == sorted[i - 1])
                throw ContractError("set elements must be distinct");
        }
    }
}

// How many listed sets contain each universe element.
std::vector<int> occurrence_counts(const std::vector<std::vector<int>>& sets, int universe) {
    std::vector<int> count(universe, 0);
    for (const auto& set : sets)
        for (int j : set) ++count[j];
    return count;
}

}  // namespace

void validate_hitting_set(const HittingSetInstance& hs) {
    if (hs.universe_size < 1) throw ContractError("hitting set needs a nonempty universe");
    if (hs.bound < 0) throw ContractError("hitting set bound must be nonnegative");
    check_family(hs.sets, hs.universe_size, false);
}

void validate_x3c(const X3CInstance& x3c) {
    if (x3c.m < 1) throw ContractError("exact cover needs m >= 1");
    check_family(x3c.sets, 3 * x3c.m, true);
}

std::optional<std::vector<int>> hs_oracle(const HittingSetInstance& hs) {
    validate_hitting_set(hs);
    const int bound = std::min(hs.bound, hs.universe_size);
    if (count_bounded_subsets(hs.universe_size, bound) > (1LL << 24))
        throw TooLargeError("hitting-set search space exceeds the oracle cap");
    std::optional<std::vector<int>> found;
    for_each_bounded_subset(hs.universe_size, bound, [&](const std::vector<int>& pick) {
        for (const auto& set : hs.sets) {
            bool hit = false;
            for (int j : set)
                if (std::find(pick.begin(), pick.end(), j) != pick.end()) {
                    hit = true;
                    break;
                }
            if (!hit) return true;
        }
        found = pick;
        return false;
    });
    return found;
}

std::optional<std::vector<int>> x3c_oracle(const X3CInstance& x3c) {
    validate_x3c(x3c);
    const int n = static_cast<int>(x3c.sets.size());
    if (count_bounded_subsets(n, std::min(x3c.m, n)) > (1LL << 24))
        throw TooLargeError("cover search space exceeds the oracle cap");
    std::optional<std::vector<int>> found;
    for_each_bounded_subset(n, std::min(x3c.m, n), [&](const std::vector<int>& pick) {
        if (static_cast<int>(pick.size()) != x3c.m) return true;
        std::vector<uint8_t> seen(3 * x3c.m, 0);
        for (int i : pick)
            for (int j : x3c.sets[i]) {
                if (seen[j]) return true;  // overlapping choice, keep searching
                seen[j] = 1;
            }
        found = pick;
        return false;
    });
    return found;
}

namespace {

// Shared election behind the candidate-control reductions from hitting set:
// three protected candidates c, d, w next to one spoiler per universe element.
struct QualifiedTrio {
    Election election;
    int m = 0, n = 0, k = 0;
    int c = 0, d = 0, w = 0;  // spoiler j keeps candidate index j
};

QualifiedTrio build_qualified_trio(const HittingSetInstance& hs) {
    validate_hitting_set(hs);
    QualifiedTrio out;
    out.m = hs.universe_size;
    out.n = static_cast<int>(hs.sets.size());
    out.k = hs.bound;
    const int m = out.m, n = out.n, k = out.k;
    if (n < 2) throw ContractError("construction needs at least two sets");
    if (k < 1 || k >= m) throw ContractError("construction needs 1 <= bound < universe size");

    std::vector<std::string> names = numbered("b", m);
    names.insert(names.end(), {"c", "d", "w"});
    out.election = Election(names);
    out.c = m;
    out.d = m + 1;
    out.w = m + 2;

    Election& e = out.election;
    e.add_ballot(std::vector<int>{out.c}, 2 * m + 1);
    e.add_ballot({out.c, out.w}, 2 * n + 2 * k * (n - 1) + 3);
    e.add_ballot({out.w, out.c}, 2 * n * (k + 1) + 5);
    for (const auto& set : hs.sets) {
        std::vector<int> ranked{out.d};
        for (int j : ascending(set)) ranked.push_back(j);
        ranked.push_back(out.c);
        e.add_ballot(std::move(ranked), 2 * (k + 1));
    }
    for (int j = 0; j < m; ++j) e.add_ballot({out.d, j, out.w}, 2);
    e.add_ballot({out.d, out.w, out.c}, 2 * (k + 1));
    return out;
}

// Index layout for the destructive voter-partition construction.
struct GuardedDuo {
    Election election;
    int m = 0, n = 0, k = 0;
    int d0 = 0, e0 = 0, c = 0, w = 0;
    // voter layout: group 1 holds n blocks of k+1 voters, then one voter per
    // spoiler, then m blocks of k-1 single-spoiler voters, then the rest
    Score pair_voter(int j) const { return static_cast<Score>(n) * (k + 1) + j; }
    Score solo_block(int j) const {
        return static_cast<Score>(n) * (k + 1) + m + static_cast<Score>(j) * (k - 1);
    }
};

GuardedDuo build_guarded_duo(const HittingSetInstance& hs) {
    validate_hitting_set(hs);
    GuardedDuo out;
    out.m = hs.universe_size;
    out.n = static_cast<int>(hs.sets.size());
    out.k = hs.bound;
    const int m = out.m, n = out.n, k = out.k;
    if (n < 1) throw ContractError("construction needs at least one set");
    if (k < 1 || k >= m) throw ContractError("construction needs 1 <= bound < universe size");

    std::vector<std::string> names = numbered("b", m);
    const std::vector<std::string> d_names = numbered("d", 2 * (m + 1));
    const std::vector<std::string> e_names = numbered("e", 2 * (m - 1));
    names.insert(names.end(), d_names.begin(), d_names.end());
    names.insert(names.end(), e_names.begin(), e_names.end());
    names.insert(names.end(), {"c", "w"});
    out.election = Election(names);
    out.d0 = m;
    out.e0 = m + 2 * (m + 1);
    out.c = out.e0 + 2 * (m - 1);
    out.w = out.c + 1;

    Election& e = out.election;
    for (const auto& set : hs.sets) {
        std::vector<int> ranked{out.w};
        for (int j : ascending(set)) ranked.push_back(j);
        ranked.push_back(out.c);
        e.add_ballot(std::move(ranked), k + 1);
    }
    for (int j = 0; j < m; ++j) e.add_ballot({out.c, j, out.w}, 1);
    if (k > 1)
        for (int j = 0; j < m; ++j) e.add_ballot(std::vector<int>{j}, k - 1);
    for (int p = 0; p < m + 1; ++p)
        e.add_ballot({out.d0 + 2 * p, out.d0 + 2 * p + 1, out.w}, 1);
    for (int r = 0; r < 2 * (m - 1); ++r) e.add_ballot(std::vector<int>{out.e0 + r}, 1);
    e.add_ballot(std::vector<int>{out.c},
                 static_cast<Score>(n) * (k + 1) + m - k + 1);
    e.add_ballot({out.c, out.w}, static_cast<Score>(m) * k + k - 1);
    e.add_ballot({out.w, out.c}, 1);
    return out;
}

}  // namespace

ControlInstance reduce_candidate_control_adding(const HittingSetInstance& hs, Goal goal,
                                                bool limited) {
    QualifiedTrio built = build_qualified_trio(hs);
    ControlInstance inst;
    inst.type = ControlType{
        limited ? Action::AddCandidates : Action::AddCandidatesUnlimited, goal, std::nullopt};
    inst.target = goal == Goal::Constructive ? built.w : built.c;
    inst.election = std::move(built.election);
    inst.spoilers.resize(hs.universe_size);
    std::iota(inst.spoilers.begin(), inst.spoilers.end(), 0);
    if (limited) inst.budget = hs.bound;
    return inst;
}

ControlInstance reduce_candidate_control_deleting_destructive(const HittingSetInstance& hs) {
    QualifiedTrio built = build_qualified_trio(hs);
    ControlInstance inst;
    inst.type = ControlType{Action::DeleteCandidates, Goal::Destructive, std::nullopt};
    inst.target = built.c;
    inst.election = std::move(built.election);
    inst.budget = hs.universe_size - hs.bound;
    return inst;
}

ControlInstance reduce_candidate_control_partition(const HittingSetInstance& hs, Goal goal,
                                                   TieRule tie, bool runoff) {
    QualifiedTrio built = build_qualified_trio(hs);
    ControlInstance inst;
    inst.type = ControlType{
        runoff ? Action::RunoffPartitionCandidates : Action::PartitionCandidates, goal, tie};
    inst.target = goal == Goal::Constructive ? built.w : built.c;
    inst.election = std::move(built.election);
    return inst;
}

ControlInstance reduce_deleting_candidates_constructive(const HittingSetInstance& hs) {
    validate_hitting_set(hs);
    const int m = hs.universe_size;
    const int n = static_cast<int>(hs.sets.size());
    const int k = hs.bound;
    if (n < 2) throw ContractError("construction needs at least two sets");
    if (k < 1 || k >= m) throw ContractError("construction needs 1 <= bound < universe size");
    int filler_total = 0;
    for (const auto& set : hs.sets) {
        if (static_cast<int>(set.size()) > n + k)
            throw ContractError("construction needs every set no larger than |sets| + bound");
        filler_total += n + k - static_cast<int>(set.size());
    }

    std::vector<std::string> names = numbered("b", m);
    const std::vector<std::string> c_names = numbered("c", k + 1);
    const std::vector<std::string> d_names = numbered("d", filler_total);
    const std::vector<std::string> e_names = numbered("e", n);
    names.insert(names.end(), c_names.begin(), c_names.end());
    names.insert(names.end(), d_names.begin(), d_names.end());
    names.insert(names.end(), e_names.begin(), e_names.end());
    names.push_back("w");
    const int c0 = m;
    const int d0 = m + k + 1;
    const int e0 = d0 + filler_total;
    const int w = e0 + n;

    Election e(names);
    // one voter per set: its elements padded with fillers, the rival last
    int used = 0;
    for (const auto& set : hs.sets) {
        std::vector<int> ranked = ascending(set);
        const int pad = n + k - static_cast<int>(set.size());
        for (int t = 0; t < pad; ++t) ranked.push_back(d0 + used++);
        ranked.push_back(w);
        e.add_ballot(std::move(ranked), 1);
    }
    // each blocker trails its k peers behind a common prefix
    for (int j = 0; j < k + 1; ++j) {
        std::vector<int> ranked;
        for (int t = 0; t < n; ++t) ranked.push_back(e0 + t);
        for (int t = 0; t < k + 1; ++t)
            if (t != j) ranked.push_back(c0 + t);
        ranked.push_back(c0 + j);
        e.add_ballot(std::move(ranked), 1);
    }
    e.add_ballot(std::vector<int>{w}, k + 1);
    std::vector<int> blockers(k + 1);
    std::iota(blockers.begin(), blockers.end(), c0);
    e.add_ballot(blockers, n);
    blockers.push_back(w);
    e.add_ballot(blockers, 1);

    ControlInstance inst;
    inst.type = ControlType{Action::DeleteCandidates, Goal::Constructive, std::nullopt};
    inst.election = std::move(e);
    inst.budget = k;
    inst.target = w;
    return inst;
}

ControlInstance reduce_adding_voters(const X3CInstance& x3c) {
    validate_x3c(x3c);
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    if (m < 2) throw ContractError("construction needs m >= 2");

    std::vector<std::string> names = numbered("b", 3 * m);
    names.push_back("w");
    const std::vector<std::string> d_names = numbered("d", n * (3 * m - 4));
    names.insert(names.end(), d_names.begin(), d_names.end());
    const int w = 3 * m;
    const int d0 = 3 * m + 1;

    Election e(names);
    if (m > 2) {
        std::vector<int> all_b(3 * m);
        std::iota(all_b.begin(), all_b.end(), 0);
        e.add_ballot(std::move(all_b), m - 2);
    }

    ControlInstance inst;
    inst.type = ControlType{Action::AddVoters, Goal::Constructive, std::nullopt};
    inst.election = std::move(e);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked;
        for (int t = 0; t < 3 * m - 4; ++t) ranked.push_back(d0 + i * (3 * m - 4) + t);
        for (int j : ascending(x3c.sets[i])) ranked.push_back(j);
        ranked.push_back(w);
        inst.pool.push_back(Ballot{std::move(ranked), 1});
    }
    inst.budget = m;
    inst.target = w;
    return inst;
}

ControlInstance reduce_deleting_voters(const X3CInstance& x3c) {
    validate_x3c(x3c);
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    // With one triple over a three-element universe the built election has
    // only two voters, and deleting the cover voter leaves the padding
    // candidate as the majority winner instead of the rival. Every larger
    // instance keeps the level separation intact.
    if (m == 1 && n == 1)
        throw ContractError("the deleting-voters construction needs a second set when m is 1");

    std::vector<std::string> names = numbered("b", 3 * m);
    names.insert(names.end(), {"c", "w"});
    const std::vector<std::string> d_names = numbered("d", 3 * n * m);
    names.insert(names.end(), d_names.begin(), d_names.end());
    const int c = 3 * m;
    const int w = 3 * m + 1;
    const int d0 = 3 * m + 2;

    Election e(names);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked = ascending(x3c.sets[i]);
        ranked.push_back(c);
        e.add_ballot(std::move(ranked), 1);
    }
    const std::vector<int> occur = occurrence_counts(x3c.sets, 3 * m);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked;
        for (int j = 0; j < 3 * m; ++j)
            if (i < n - occur[j]) ranked.push_back(j);
        const int pad = 3 * m - static_cast<int>(ranked.size());
        for (int t = 0; t < pad; ++t) ranked.push_back(d0 + i * 3 * m + t);
        ranked.push_back(w);
        e.add_ballot(std::move(ranked), 1);
    }
    if (m > 1) e.add_ballot(std::vector<int>{c}, m - 1);

    ControlInstance inst;
    inst.type = ControlType{Action::DeleteVoters, Goal::Constructive, std::nullopt};
    inst.election = std::move(e);
    inst.budget = m;
    inst.target = w;
    return inst;
}

ControlInstance reduce_partition_voters_te(const X3CInstance& x3c) {
    validate_x3c(x3c);
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());

    std::vector<std::string> names = numbered("b", 3 * m);
    names.insert(names.end(), {"c", "x", "y", "w"});
    const std::vector<std::string> z_names = numbered("z", n);
    names.insert(names.end(), z_names.begin(), z_names.end());
    const int c = 3 * m;
    const int x = 3 * m + 1;
    const int y = 3 * m + 2;
    const int w = 3 * m + 3;
    const int z0 = 3 * m + 4;

    Election e(names);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked{c};
        for (int j : ascending(x3c.sets[i])) ranked.push_back(j);
        e.add_ballot(std::move(ranked), 1);
    }
    const std::vector<int> occur = occurrence_counts(x3c.sets, 3 * m);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked;
        for (int t = 0; t < n; ++t)
            if (t != i) ranked.push_back(z0 + t);
        for (int j = 0; j < 3 * m; ++j)
            if (i < n - occur[j]) ranked.push_back(j);
        ranked.push_back(w);
        e.add_ballot(std::move(ranked), 1);
    }
    for (int i = 0; i < n; ++i) e.add_ballot({c, z0 + i}, 1);
    e.add_ballot(std::vector<int>{x}, n + m);
    if (m > 1) e.add_ballot(std::vector<int>{y}, m - 1);

    ControlInstance inst;
    inst.type =
        ControlType{Action::PartitionVoters, Goal::Constructive, TieRule::TiesEliminate};
    inst.election = std::move(e);
    inst.target = w;
    return inst;
}

ControlInstance reduce_partition_voters_tp(const X3CInstance& x3c) {
    validate_x3c(x3c);
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    if (n <= m + 1) throw ContractError("construction needs more sets than m + 1");

    std::vector<std::string> names = numbered("b", 3 * m);
    const std::vector<std::string> f_names = numbered("f", n + m + 1);
    names.insert(names.end(), f_names.begin(), f_names.end());
    const std::vector<std::string> z_names = numbered("z", n);
    names.insert(names.end(), z_names.begin(), z_names.end());
    names.insert(names.end(), {"w", "x", "y"});
    const int f0 = 3 * m;
    const int z0 = f0 + n + m + 1;
    const int w = z0 + n;
    const int x = w + 1;
    const int y = w + 2;

    Election e(names);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked{y};
        for (int j : ascending(x3c.sets[i])) ranked.push_back(j);
        e.add_ballot(std::move(ranked), 1);
    }
    for (int i = 0; i < n; ++i) e.add_ballot({y, z0 + i}, 1);
    const std::vector<int> occur = occurrence_counts(x3c.sets, 3 * m);
    for (int i = 0; i < n; ++i) {
        std::vector<int> ranked;
        for (int t = 0; t < n; ++t)
            if (t != i) ranked.push_back(z0 + t);
        for (int j = 0; j < 3 * m; ++j)
            if (i < n - occur[j]) ranked.push_back(j);
        ranked.push_back(w);
        e.add_ballot(std::move(ranked), 1);
    }
    {
        std::vector<int> ranked;
        for (int t = 0; t < n; ++t) ranked.push_back(z0 + t);
        for (int j = 0; j < 3 * m; ++j) ranked.push_back(j);
        ranked.push_back(w);
        e.add_ballot(std::move(ranked), n);
    }
    e.add_ballot(std::vector<int>{x}, n + m + 1);
    for (int t = 0; t < n + m + 1; ++t) e.add_ballot(std::vector<int>{f0 + t}, 1);

    ControlInstance inst;
    inst.type = ControlType{Action::PartitionVoters, Goal::Constructive, TieRule::TiesPromote};
    inst.election = std::move(e);
    inst.target = w;
    return inst;
}

ControlInstance reduce_destructive_partition_voters_tp(const HittingSetInstance& hs) {
    GuardedDuo built = build_guarded_duo(hs);
    ControlInstance inst;
    inst.type = ControlType{Action::PartitionVoters, Goal::Destructive, TieRule::TiesPromote};
    inst.target = built.c;
    inst.election = std::move(built.election);
    return inst;
}

const std::vector<ReductionKind>& all_reduction_kinds() {
    static const std::vector<ReductionKind> kinds = {
        ReductionKind::CandidateControlAdding,
        ReductionKind::CandidateControlDeletingDestructive,
        ReductionKind::CandidateControlPartition,
        ReductionKind::DeletingCandidatesConstructive,
        ReductionKind::AddingVoters,
        ReductionKind::DeletingVoters,
        ReductionKind::PartitionVotersTe,
        ReductionKind::PartitionVotersTp,
        ReductionKind::DestructivePartitionVotersTp,
    };
    return kinds;
}

bool reduction_kind_uses_hitting_set(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::CandidateControlAdding:
        case ReductionKind::CandidateControlDeletingDestructive:
        case ReductionKind::CandidateControlPartition:
        case ReductionKind::DeletingCandidatesConstructive:
        case ReductionKind::DestructivePartitionVotersTp:
            return true;
        case ReductionKind::AddingVoters:
        case ReductionKind::DeletingVoters:
        case ReductionKind::PartitionVotersTe:
        case ReductionKind::PartitionVotersTp:
            return false;
    }
    throw InternalError("unhandled reduction kind");
}

std::string reduction_kind_name(ReductionKind kind) {
    switch (kind) {
        case ReductionKind::CandidateControlAdding:
            return "candidate-control-adding";
        case ReductionKind::CandidateControlDeletingDestructive:
            return "candidate-control-deleting-destructive";
        case ReductionKind::CandidateControlPartition:
            return "candidate-control-partition";
        case ReductionKind::DeletingCandidatesConstructive:
            return "deleting-candidates-constructive";
        case ReductionKind::AddingVoters:
            return "adding-voters";
        case ReductionKind::DeletingVoters:
            return "deleting-voters";
        case ReductionKind::PartitionVotersTe:
            return "partition-voters-te";
        case ReductionKind::PartitionVotersTp:
            return "partition-voters-tp";
        case ReductionKind::DestructivePartitionVotersTp:
            return "destructive-partition-voters-tp";
    }
    throw InternalError("unhandled reduction kind");
}

std::optional<ReductionKind> parse_reduction_kind(const std::string& name) {
    for (ReductionKind kind : all_reduction_kinds())
        if (reduction_kind_name(kind) == name) return kind;
    return std::nullopt;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw InternalError("reduction self-check failed: " + what);
}

// Pads a hitting set up to exactly `size` elements with unused ones; any
// superset of a hitting set still hits everything.
std::vector<int> padded_to(const std::vector<int>& base, int size, int universe) {
    std::vector<int> out = base;
    std::vector<uint8_t> used(universe, 0);
    for (int j : out) used[j] = 1;
    for (int j = 0; j < universe && static_cast<int>(out.size()) < size; ++j)
        if (!used[j]) out.push_back(j);
    return ascending(std::move(out));
}

void check_qualified_trio(const HittingSetInstance& hs,
                          const std::optional<std::vector<int>>& witness,
                          bool with_partition_replay, VerificationReport& report) {
    const QualifiedTrio built = build_qualified_trio(hs);
    const Election& e = built.election;
    const int m = built.m, n = built.n, k = built.k;

    const Election trio = e.restrict({built.c, built.d, built.w});
    require(trio.level_score(0, 2) == 2 * (m - k) + 6 * n * (k + 1) + 9,
            "guard level-2 score on the protected roster");
    require(trio.level_score(1, 2) == 2 * n * (k + 1) + 2 * (m + k + 1),
            "decoy level-2 score on the protected roster");
    require(trio.level_score(2, 2) == 4 * n * (k + 1) + 2 * m + 10,
            "rival level-2 score on the protected roster");
    const WinnerResult base = winners_within(e, {built.c, built.d, built.w});
    require(base.winners == std::vector<int>{built.c} &&
                base.resolution == Resolution::MajorityLevel && base.level == 2,
            "guard alone wins the protected roster at level 2");
    report.checks.push_back("protected-roster score table and unique winner verified");

    if (m + 2 <= 20) {
        // sweep every roster built from spoilers plus the decoy and the rival:
        // the guard loses uniqueness exactly when both extras are seated and
        // the chosen spoilers hit every set within the bound
        for (long long mask = 0; mask < (1LL << (m + 2)); ++mask) {
            std::vector<int> roster{built.c};
            std::vector<int> chosen;
            for (int j = 0; j < m; ++j)
                if (mask >> j & 1) {
                    roster.push_back(j);
                    chosen.push_back(j);
                }
            const bool has_d = mask >> m & 1;
            const bool has_w = mask >> (m + 1) & 1;
            if (has_d) roster.push_back(built.d);
            if (has_w) roster.push_back(built.w);
            bool hits_all = true;
            for (const auto& set : hs.sets) {
                bool hit = false;
                for (int j : set)
                    if (mask >> j & 1) hit = true;
                if (!hit) hits_all = false;
            }
            const bool expected =
                has_d && has_w && hits_all && static_cast<int>(chosen.size()) <= k;
            const WinnerResult r = winners_within(e, roster);
            const bool dethroned = !(r.winners == std::vector<int>{built.c});
            require(dethroned == expected, "roster sweep matches the hitting-set rule");
            if (expected)
                require(r.winners == std::vector<int>{built.w} && r.level == 2 &&
                            r.resolution == Resolution::MajorityLevel,
                        "rival alone wins dethroning rosters at level 2");
        }
        report.checks.push_back("exhaustive roster sweep matches the hitting-set rule");
    }

    if (witness) {
        const std::vector<int> padded = padded_to(*witness, k, m);
        std::vector<int> roster = padded;
        roster.insert(roster.end(), {built.c, built.d, built.w});
        const WinnerResult r = winners_within(e, roster);
        require(r.winners == std::vector<int>{built.w} && r.level == 2,
                "witness roster elects the rival alone at level 2");
        const Election sub = e.restrict(roster);
        require(sub.level_score(static_cast<int>(padded.size()) + 2, 2) ==
                    4 * n * (k + 1) + 10 + 2 * (m - k),
                "rival level-2 score on the witness roster");
        report.checks.push_back("witness roster replay elects the rival alone at level 2");

        if (with_partition_replay) {
            std::vector<int> rest;
            for (int j = 0; j < m; ++j)
                if (std::find(padded.begin(), padded.end(), j) == padded.end())
                    rest.push_back(j);
            for (bool runoff : {false, true})
                for (TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote}) {
                    const PartitionOutcome out =
                        evaluate_candidate_partition(e, roster, rest, tie, runoff);
                    require(out.final_round.winners == std::vector<int>{built.w},
                            "witness partition elects the rival alone");
                }
            report.checks.push_back(
                "witness partition replay elects the rival under all four variants");
        }
    }
}

void check_deleting_constructive(const HittingSetInstance& hs,
                                 const std::optional<std::vector<int>>& witness,
                                 VerificationReport& report) {
    const ControlInstance inst = reduce_deleting_candidates_constructive(hs);
    const Election& e = inst.election;
    const int m = hs.universe_size;
    const int n = static_cast<int>(hs.sets.size());
    const int k = hs.bound;
    const int w = inst.target;

    require(e.voter_count() == 2 * (n + k + 1) + 1, "electorate size");
    std::vector<int> expected_tie;
    for (int t = 0; t < k + 1; ++t) expected_tie.push_back(m + t);
    expected_tie.push_back(w);
    const WinnerResult base = e.fallback_winners();
    require(base.winners == expected_tie && base.resolution == Resolution::MajorityLevel &&
                base.level == n + k + 1 && base.top_score == n + k + 2,
            "rival ties the blockers at the deciding level");
    report.checks.push_back("base election ties the rival with every blocker");

    if (witness) {
        std::vector<int> roster;
        for (int cand = 0; cand < e.candidate_count(); ++cand)
            if (std::find(witness->begin(), witness->end(), cand) == witness->end())
                roster.push_back(cand);
        const WinnerResult r = winners_within(e, roster);
        require(r.winners == std::vector<int>{w} &&
                    r.resolution == Resolution::MajorityLevel && r.level <= n + k,
                "deleting the witness elects the rival alone");
        report.checks.push_back("witness deletion replay elects the rival alone");
    }
}

void check_adding_voters(const X3CInstance& x3c,
                         const std::optional<std::vector<int>>& witness,
                         VerificationReport& report) {
    const ControlInstance inst = reduce_adding_voters(x3c);
    const int m = x3c.m;
    const int w = inst.target;
    require(!goal_met(Goal::Constructive, w, inst.election.fallback_winners()),
            "rival must not win the base election alone");
    report.checks.push_back("base election does not elect the rival alone");

    if (witness) {
        std::vector<long long> added(witness->begin(), witness->end());
        const WinnerResult r = apply_witness(inst, AddedVoters{added});
        require(r.winners == std::vector<int>{w} &&
                    r.resolution == Resolution::MajorityLevel && r.level == 3 * m &&
                    r.top_score == m,
                "adding the cover voters elects the rival alone at the last level");
        report.checks.push_back("witness addition replay elects the rival alone");
    }
}

void check_deleting_voters(const X3CInstance& x3c,
                           const std::optional<std::vector<int>>& witness,
                           VerificationReport& report) {
    const ControlInstance inst = reduce_deleting_voters(x3c);
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    const int c = 3 * m;
    const int w = inst.target;

    if (m >= 2) {
        const WinnerResult base = inst.election.fallback_winners();
        require(base.winners == std::vector<int>{c} &&
                    base.resolution == Resolution::MajorityLevel && base.level == 4,
                "guard alone wins the base election at level 4");
        report.checks.push_back("base election elects the guard alone at level 4");
    }

    if (witness) {
        std::vector<long long> dropped(witness->begin(), witness->end());
        const WinnerResult r = apply_witness(inst, DeletedVoters{dropped});
        require(r.winners == std::vector<int>{w} &&
                    r.resolution == Resolution::MajorityLevel && r.level == 3 * m + 1 &&
                    r.top_score == n,
                "deleting the cover voters elects the rival alone");
        report.checks.push_back("witness deletion replay elects the rival alone");
    }
}

void check_partition_voters_te(const X3CInstance& x3c,
                               const std::optional<std::vector<int>>& witness,
                               VerificationReport& report) {
    const ControlInstance inst = reduce_partition_voters_te(x3c);
    const Election& e = inst.election;
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    const int c = 3 * m, x = 3 * m + 1, y = 3 * m + 2, w = 3 * m + 3, z0 = 3 * m + 4;
    const std::vector<int> occur = occurrence_counts(x3c.sets, 3 * m);

    for (int j = 0; j < 3 * m; ++j)
        require(e.approval_score(j) == n, "spoiler approval total");
    for (int i = 0; i < n; ++i)
        require(e.approval_score(z0 + i) == n, "helper approval total");
    require(e.approval_score(c) == 2 * n && e.approval_score(x) == n + m &&
                e.approval_score(y) == m - 1 && e.approval_score(w) == n,
            "special-candidate approval totals");
    if (n >= 1)
        require(e.fallback_winners().resolution == Resolution::ApprovalFallback,
                "no level carries a majority in the base election");
    report.checks.push_back("base approval totals match the design");

    if (witness) {
        std::vector<long long> first(witness->begin(), witness->end());
        for (int i = 0; i < n; ++i) first.push_back(2 * n + i);
        for (int i = 0; i < n + m; ++i) first.push_back(3 * n + i);
        std::sort(first.begin(), first.end());
        const PartitionOutcome out =
            evaluate_voter_partition(e, first, TieRule::TiesEliminate);
        require(out.side1.winners == std::vector<int>{c, x} &&
                    out.side1.resolution == Resolution::ApprovalFallback,
                "first side ties the guard with the blocker");
        require(out.promoted1.empty(), "the first-side tie eliminates everyone");
        require(out.side2.winners == std::vector<int>{w},
                "second side promotes the rival alone");
        require(out.final_round.winners == std::vector<int>{w},
                "final round elects the rival alone");
        report.checks.push_back(
            "witness partition replay eliminates the first side and elects the rival");
    }
}

void check_partition_voters_tp(const X3CInstance& x3c,
                               const std::optional<std::vector<int>>& witness,
                               VerificationReport& report) {
    const ControlInstance inst = reduce_partition_voters_tp(x3c);
    const Election& e = inst.election;
    const int m = x3c.m;
    const int n = static_cast<int>(x3c.sets.size());
    const int f0 = 3 * m;
    const int z0 = f0 + n + m + 1;
    const int w = z0 + n, x = w + 1, y = w + 2;

    for (int j = 0; j < 3 * m; ++j)
        require(e.approval_score(j) == 2 * n, "spoiler approval total");
    for (int t = 0; t < n + m + 1; ++t)
        require(e.approval_score(f0 + t) == 1, "filler approval total");
    for (int i = 0; i < n; ++i)
        require(e.approval_score(z0 + i) == 2 * n, "helper approval total");
    require(e.approval_score(w) == 2 * n && e.approval_score(x) == n + m + 1 &&
                e.approval_score(y) == 2 * n,
            "special-candidate approval totals");
    const WinnerResult base = e.fallback_winners();
    require(base.resolution == Resolution::ApprovalFallback && base.top_score == 2 * n &&
                !goal_met(Goal::Constructive, w, base),
            "base election has no majority and no unique rival win");
    report.checks.push_back("base approval totals match the design");

    if (witness) {
        std::vector<long long> first(witness->begin(), witness->end());
        for (int i = 0; i < n; ++i) first.push_back(n + i);
        for (int i = 0; i < n + m + 1; ++i) first.push_back(4 * n + i);
        std::sort(first.begin(), first.end());
        const PartitionOutcome out = evaluate_voter_partition(e, first, TieRule::TiesPromote);
        require(out.side1.winners == std::vector<int>{x} &&
                    out.side1.resolution == Resolution::MajorityLevel &&
                    out.side1.level == 1,
                "first side elects the blocker alone at level 1");
        require(out.side2.winners == std::vector<int>{w} &&
                    out.side2.resolution == Resolution::ApprovalFallback,
                "second side promotes the rival alone by approvals");
        require(out.final_round.winners == std::vector<int>{w},
                "final round elects the rival alone");
        report.checks.push_back("witness partition replay elects the rival alone");
    }
}

void check_destructive_partition(const HittingSetInstance& hs,
                                 const std::optional<std::vector<int>>& witness,
                                 const SolveLimits& limits, VerificationReport& report) {
    const GuardedDuo built = build_guarded_duo(hs);
    const Election& e = built.election;
    const int m = built.m, n = built.n, k = built.k;
    const Score nk1 = static_cast<Score>(n) * (k + 1);
    const Score maj = majority_threshold(e.voter_count());

    require(e.voter_count() == 2 * nk1 + 4 * m + 2 * static_cast<Score>(m) * k,
            "electorate size");
    require(e.level_score(built.c, 1) == nk1 + 2 * m + static_cast<Score>(m) * k &&
                e.level_score(built.c, 2) == nk1 + 2 * m + static_cast<Score>(m) * k + 1 &&
                e.level_score(built.c, 2) == maj,
            "guard level scores");
    require(e.level_score(built.w, 1) == nk1 + 1 &&
                e.level_score(built.w, 2) == nk1 + static_cast<Score>(m) * k + k &&
                e.level_score(built.w, 3) == nk1 + static_cast<Score>(m) * k + k + 2 * m + 1,
            "rival level scores");
    for (int j = 0; j < m; ++j)
        require(e.level_score(j, 1) == k - 1, "spoiler level-1 scores");
    for (int p = 0; p < m + 1; ++p)
        require(e.level_score(built.d0 + 2 * p, 1) == 1 &&
                    e.level_score(built.d0 + 2 * p + 1, 1) == 0 &&
                    e.level_score(built.d0 + 2 * p, 2) == 1 &&
                    e.level_score(built.d0 + 2 * p + 1, 2) == 1,
                "decoy level scores");
    for (int r = 0; r < 2 * (m - 1); ++r)
        require(e.level_score(built.e0 + r, 1) == 1, "filler level scores");
    const WinnerResult base = e.fallback_winners();
    require(base.winners == std::vector<int>{built.c} &&
                base.resolution == Resolution::MajorityLevel && base.level == 2,
            "guard alone wins the base election at level 2");
    report.checks.push_back("base score table matches the design");

    if (count_bipartitions(e.voter_count()) <= limits.max_partitions) {
        std::vector<const std::vector<int>*> ballot_of;
        for (const Ballot& b : e.ballots())
            for (Score t = 0; t < b.multiplicity; ++t) ballot_of.push_back(&b.ranked);
        const int total = static_cast<int>(ballot_of.size());
        const int mc = e.candidate_count();
        std::vector<Score> bucket1(static_cast<size_t>(mc + 1) * mc);
        std::vector<Score> bucket2(bucket1.size());
        std::vector<Score> cum(mc);
        // does the guard win the side whose scores sit in `bucket`?
        auto guard_wins = [&](const std::vector<Score>& bucket, Score voters) {
            const Score maj = majority_threshold(voters);
            std::fill(cum.begin(), cum.end(), 0);
            for (int level = 1; level <= mc; ++level) {
                bool reached = false;
                for (int cand = 0; cand < mc; ++cand) {
                    cum[cand] += bucket[static_cast<size_t>(level) * mc + cand];
                    if (cum[cand] >= maj) reached = true;
                }
                if (reached) break;
            }
            return cum[built.c] == *std::max_element(cum.begin(), cum.end());
        };
        for_each_bipartition(total, [&](const std::vector<uint8_t>& in_second) {
            std::fill(bucket1.begin(), bucket1.end(), 0);
            std::fill(bucket2.begin(), bucket2.end(), 0);
            Score voters1 = 0;
            for (int i = 0; i < total; ++i) {
                std::vector<Score>& bucket = in_second[i] ? bucket2 : bucket1;
                voters1 += in_second[i] ? 0 : 1;
                const std::vector<int>& ranked = *ballot_of[i];
                for (size_t p = 0; p < ranked.size(); ++p)
                    bucket[(p + 1) * mc + ranked[p]] += 1;
            }
            require(guard_wins(bucket1, voters1) ||
                        guard_wins(bucket2, total - voters1),
                    "guard wins one side of every voter bipartition");
            return true;
        });
        report.checks.push_back("every voter bipartition keeps the guard winning on one side");
    }

    if (witness) {
        const std::vector<int> padded = padded_to(*witness, k, m);
        std::vector<int> roster = padded;
        roster.insert(roster.end(), {built.c, built.w});
        const WinnerResult final_round = winners_within(e, roster);
        require(final_round.winners == std::vector<int>{built.c, built.w} &&
                    final_round.resolution == Resolution::MajorityLevel &&
                    final_round.level == 2 && final_round.top_score == maj,
                "witness roster ties guard and rival exactly at the deciding level");
        const Election sub = e.restrict(roster);
        require(sub.level_score(static_cast<int>(padded.size()) + 1, 1) == nk1 + m + 2,
                "rival level-1 score on the witness roster");
        report.checks.push_back("witness final-round roster ties guard and rival");

        if (k == 2) {
            std::vector<long long> first;
            for (int j : padded) {
                first.push_back(built.pair_voter(j));
                for (int t = 0; t < k - 1; ++t) first.push_back(built.solo_block(j) + t);
            }
            std::sort(first.begin(), first.end());
            const PartitionOutcome out =
                evaluate_voter_partition(e, first, TieRule::TiesPromote);
            std::vector<int> expected = padded;
            expected.insert(expected.end(), {built.c, built.w});
            require(out.side1.winners == expected &&
                        out.side1.resolution == Resolution::ApprovalFallback &&
                        out.side1.top_score == k,
                    "first side ties guard, rival and witness spoilers");
            require(goal_met(Goal::Destructive, built.c, out.final_round),
                    "witness partition dethrones the guard");
            report.checks.push_back("witness partition replay dethrones the guard");
        }
    }
}

}  // namespace

VerificationReport verify_reduction(ReductionKind kind, const HittingSetInstance& hs,
                                    const SolveLimits& limits) {
    if (!reduction_kind_uses_hitting_set(kind))
        throw ContractError("this reduction kind expects an exact-cover source");
    VerificationReport report;
    const std::optional<std::vector<int>> witness = hs_oracle(hs);
    report.source_yes = witness.has_value();
    if (witness) report.source_witness = *witness;

    auto run = [&](ControlInstance inst) {
        VariantOutcome out;
        out.control_code = control_code(inst.type);
        const SolveReport solved = solve_exact(inst, limits);
        out.decision = solved.decision;
        out.explored = solved.explored;
        report.variants.push_back(std::move(out));
    };

    switch (kind) {
        case ReductionKind::CandidateControlAdding:
            for (Goal goal : {Goal::Constructive, Goal::Destructive})
                for (bool limited : {false, true})
                    run(reduce_candidate_control_adding(hs, goal, limited));
            check_qualified_trio(hs, witness, false, report);
            break;
        case ReductionKind::CandidateControlDeletingDestructive:
            run(reduce_candidate_control_deleting_destructive(hs));
            check_qualified_trio(hs, witness, false, report);
            break;
        case ReductionKind::CandidateControlPartition:
            for (Goal goal : {Goal::Constructive, Goal::Destructive})
                for (bool runoff : {false, true})
                    for (TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote})
                        run(reduce_candidate_control_partition(hs, goal, tie, runoff));
            check_qualified_trio(hs, witness, true, report);
            break;
        case ReductionKind::DeletingCandidatesConstructive:
            run(reduce_deleting_candidates_constructive(hs));
            check_deleting_constructive(hs, witness, report);
            break;
        case ReductionKind::DestructivePartitionVotersTp:
            run(reduce_destructive_partition_voters_tp(hs));
            check_destructive_partition(hs, witness, limits, report);
            break;
        default:
            throw InternalError("unhandled hitting-set reduction kind");
    }

    report.agreement = true;
    for (const VariantOutcome& v : report.variants)
        if (v.decision != report.source_yes) report.agreement = false;
    return report;
}

VerificationReport verify_reduction(ReductionKind kind, const X3CInstance& x3c,
                                    const SolveLimits& limits) {
    if (reduction_kind_uses_hitting_set(kind))
        throw ContractError("this reduction kind expects a hitting-set source");
    VerificationReport report;
    const std::optional<std::vector<int>> witness = x3c_oracle(x3c);
    report.source_yes = witness.has_value();
    if (witness) report.source_witness = *witness;

    auto run = [&](ControlInstance inst) {
        VariantOutcome out;
        out.control_code = control_code(inst.type);
        const SolveReport solved = solve_exact(inst, limits);
        out.decision = solved.decision;
        out.explored = solved.explored;
        report.variants.push_back(std::move(out));
    };

    switch (kind) {
        case ReductionKind::AddingVoters:
            run(reduce_adding_voters(x3c));
            check_adding_voters(x3c, witness, report);
            break;
        case ReductionKind::DeletingVoters:
            run(reduce_deleting_voters(x3c));
            check_deleting_voters(x3c, witness, report);
            break;
        case ReductionKind::PartitionVotersTe:
            run(reduce_partition_voters_te(x3c));
            check_partition_voters_te(x3c, witness, report);
            break;
        case ReductionKind::PartitionVotersTp:
            run(reduce_partition_voters_tp(x3c));
            check_partition_voters_tp(x3c, witness, report);
            break;
        default:
            throw InternalError("unhandled exact-cover reduction kind");
    }

    report.agreement = true;
    for (const VariantOutcome& v : report.variants)
        if (v.decision != report.source_yes) report.agreement = false;
    return report;
}

}  // namespace fv
