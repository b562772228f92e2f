// Acceptance battery for the fallback-voting control toolkit. Each criterion
// prints one "criterion N: PASS/FAIL" line; failed expectations also print a
// FAIL line with their location. Exit status is nonzero when anything failed.
//
// Usage: fv_acceptance --cli PATH_TO_FVCTL

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fv/control.hpp"
#include "fv/exact_solver.hpp"
#include "fv/io.hpp"
#include "fv/poly_solver.hpp"
#include "fv/reductions.hpp"
#include "support/fixtures.hpp"
#include "support/random_gen.hpp"

using namespace fv;

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                    \
    do {                                                                \
        if (!(cond)) {                                                  \
            ++g_failures;                                               \
            std::printf("FAIL %s:%d: %s\n", __FILE__, __LINE__, #cond); \
        }                                                               \
    } while (0)

long long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string g_cli_path;

std::vector<int> ids(const Election& e, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const std::string& name : names) out.push_back(e.candidate_index(name));
    return out;
}

// ---- criterion 1: fixture exactness ----------------------------------------

void criterion_fixture_exactness() {
    const Election e = testsupport::example_one();
    // Average over repetitions so the sub-millisecond budget is measured
    // meaningfully rather than against one cold run.
    const long long start = now_ms();
    for (int rep = 0; rep < 200; ++rep) {
        const WinnerResult full = e.fallback_winners();
        EXPECT(full.winners == ids(e, {"a"}));
        EXPECT(full.resolution == Resolution::MajorityLevel);
        EXPECT(full.level == 2);
        EXPECT(full.top_score == 4);
        EXPECT(e.level_score(e.candidate_index("a"), 2) == 4);

        const Election sub = e.restrict(ids(e, {"a", "c", "d"}));
        const WinnerResult reduced = sub.fallback_winners();
        EXPECT(reduced.winners == std::vector<int>{sub.candidate_index("c")});
        EXPECT(reduced.level == 2);
        EXPECT(reduced.top_score == 5);
        EXPECT(sub.level_score(sub.candidate_index("c"), 2) == 5);
    }
    EXPECT(now_ms() - start < 200);  // < 1 ms per evaluation on average
}

// ---- criterion 2: partition susceptibility replays --------------------------

void criterion_partition_replays() {
    const Election e1 = testsupport::example_one();
    const std::vector<int> first = ids(e1, {"a", "c", "d"});
    const std::vector<int> second = ids(e1, {"b"});
    const long long start = now_ms();
    for (int rep = 0; rep < 200; ++rep) {
        for (const TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote})
            for (const bool runoff : {false, true}) {
                const PartitionOutcome out =
                    evaluate_candidate_partition(e1, first, second, tie, runoff);
                EXPECT(out.final_round.winners == ids(e1, {"c"}));
            }

        const Election e2 = testsupport::example_two();
        const int a = e2.candidate_index("a");
        for (const TieRule tie : {TieRule::TiesEliminate, TieRule::TiesPromote}) {
            const PartitionOutcome out = evaluate_voter_partition(e2, {0, 1}, tie);
            EXPECT(std::find(out.finalists.begin(), out.finalists.end(), a) ==
                   out.finalists.end());
            EXPECT(std::find(out.final_round.winners.begin(), out.final_round.winners.end(), a) ==
                   out.final_round.winners.end());
            EXPECT(out.final_round.winners == ids(e2, {"c"}));
        }
    }
    EXPECT(now_ms() - start < 200);
}

// ---- criterion 3: construction score identities -----------------------------

void criterion_score_identities() {
    const long long start = now_ms();
    testsupport::Rng rng(30301);

    const auto random_sets = [&](int universe, int count, int max_size) {
        std::vector<std::vector<int>> sets;
        for (int i = 0; i < count; ++i) {
            std::vector<int> pool(universe);
            for (int j = 0; j < universe; ++j) pool[j] = j;
            rng.shuffle(pool);
            pool.resize(rng.range(1, max_size));
            std::sort(pool.begin(), pool.end());
            sets.push_back(pool);
        }
        return sets;
    };

    for (int trial = 0; trial < 100; ++trial) {
        const int m = rng.range(2, 6);
        const int n = rng.range(2, 5);
        const int k = rng.range(1, m - 1);
        const HittingSetInstance hs{m, random_sets(m, n, m), k};
        const Election& e = reduce_candidate_control_adding(hs, Goal::Constructive, true).election;
        const Election trio =
            e.restrict({e.candidate_index("c"), e.candidate_index("d"), e.candidate_index("w")});
        const long long M = m, N = n, K = k;
        EXPECT(trio.level_score(trio.candidate_index("c"), 2) ==
               2 * (M - K) + 6 * N * (K + 1) + 9);
        EXPECT(trio.level_score(trio.candidate_index("d"), 2) ==
               2 * N * (K + 1) + 2 * (M + K + 1));
        EXPECT(trio.level_score(trio.candidate_index("w"), 2) == 4 * N * (K + 1) + 2 * M + 10);
        EXPECT(trio.fallback_winners().winners == std::vector<int>{trio.candidate_index("c")});
    }

    for (int trial = 0; trial < 100; ++trial) {
        const int m = rng.range(1, 3);
        const int n = rng.range(m + 2, 5);
        X3CInstance x3c{m, {}};
        for (int i = 0; i < n; ++i) {
            std::vector<int> pool(3 * m);
            for (int j = 0; j < 3 * m; ++j) pool[j] = j;
            rng.shuffle(pool);
            pool.resize(3);
            std::sort(pool.begin(), pool.end());
            x3c.sets.push_back(pool);
        }
        const Election& e = reduce_partition_voters_tp(x3c).election;
        const long long N = n, M = m;
        EXPECT(e.voter_count() == 6 * N + 2 * M + 2);
        EXPECT(e.approval_score(e.candidate_index("w")) == 2 * N);
        EXPECT(e.approval_score(e.candidate_index("y")) == 2 * N);
        EXPECT(e.approval_score(e.candidate_index("x")) == N + M + 1);
        for (int j = 1; j <= 3 * m; ++j)
            EXPECT(e.approval_score(e.candidate_index("b" + std::to_string(j))) == 2 * N);
        for (int t = 1; t <= n + m + 1; ++t)
            EXPECT(e.approval_score(e.candidate_index("f" + std::to_string(t))) == 1);
        const WinnerResult base = e.fallback_winners();
        EXPECT(base.resolution == Resolution::ApprovalFallback);
        EXPECT(base.top_score == 2 * N);
    }

    for (int trial = 0; trial < 100; ++trial) {
        const int m = rng.range(2, 6);
        const int n = rng.range(1, 5);
        const int k = rng.range(1, m - 1);
        const HittingSetInstance hs{m, random_sets(m, n, m), k};
        const Election& e = reduce_destructive_partition_voters_tp(hs).election;
        const long long M = m, N = n, K = k;
        EXPECT(e.voter_count() == 2 * N * (K + 1) + 4 * M + 2 * M * K);
        const int c = e.candidate_index("c"), w = e.candidate_index("w");
        EXPECT(e.level_score(c, 1) == N * (K + 1) + 2 * M + M * K);
        EXPECT(e.level_score(c, 2) == majority_threshold(e.voter_count()));
        EXPECT(e.level_score(w, 1) == N * (K + 1) + 1);
        EXPECT(e.level_score(w, 2) == N * (K + 1) + M * K + K);
        EXPECT(e.level_score(w, 3) == N * (K + 1) + M * K + K + 2 * M + 1);
        EXPECT(e.fallback_winners().winners == std::vector<int>{c});
    }

    EXPECT(now_ms() - start < 1000);
}

// ---- criterion 4: reduction equivalence over seeded suites -------------------

void criterion_reduction_equivalence() {
    const long long start = now_ms();
    testsupport::Rng rng(40404);

    // Twenty hitting-set sources, half biased toward hittable, half forced
    // unhittable via more pairwise disjoint singletons than the bound allows.
    std::vector<HittingSetInstance> hs_suite;
    for (int i = 0; i < 20; ++i) {
        HittingSetInstance hs;
        hs.universe_size = rng.range(2, 4);
        hs.bound = rng.range(1, std::min(2, hs.universe_size - 1));
        if (i % 2 == 1 && hs.bound + 1 <= hs.universe_size) {
            for (int j = 0; j <= hs.bound; ++j) hs.sets.push_back({j});
            while (static_cast<int>(hs.sets.size()) < 2) hs.sets.push_back({0});
        } else {
            const int n = rng.range(2, 3);
            // Sizes stay within n + k so every construction accepts the source.
            const int max_size = std::min(hs.universe_size, n + hs.bound);
            for (int s = 0; s < n; ++s) {
                std::vector<int> pool(hs.universe_size);
                for (int j = 0; j < hs.universe_size; ++j) pool[j] = j;
                rng.shuffle(pool);
                pool.resize(rng.range(1, std::max(1, max_size)));
                std::sort(pool.begin(), pool.end());
                hs.sets.push_back(pool);
            }
        }
        hs_suite.push_back(hs);
    }
    int hs_yes = 0, hs_no = 0;
    for (const HittingSetInstance& hs : hs_suite) (hs_oracle(hs) ? hs_yes : hs_no) += 1;
    EXPECT(hs_yes >= 4);
    EXPECT(hs_no >= 4);

    for (const HittingSetInstance& hs : hs_suite) {
        for (const ReductionKind kind :
             {ReductionKind::CandidateControlAdding,
              ReductionKind::CandidateControlDeletingDestructive,
              ReductionKind::CandidateControlPartition}) {
            const VerificationReport report = verify_reduction(kind, hs);
            EXPECT(report.agreement);
        }
        // The deleting construction needs every set to fit its filler budget.
        bool fits = true;
        for (const auto& set : hs.sets)
            if (static_cast<int>(set.size()) > static_cast<int>(hs.sets.size()) + hs.bound)
                fits = false;
        if (fits) {
            const VerificationReport report =
                verify_reduction(ReductionKind::DeletingCandidatesConstructive, hs);
            EXPECT(report.agreement);
        }
    }

    // Twelve exact-cover sources cycling coverable, uncoverable, and tiny.
    std::vector<X3CInstance> x3c_suite;
    for (int i = 0; i < 12; ++i) {
        X3CInstance x3c;
        if (i % 3 == 0) {
            x3c.m = 2;
            x3c.sets = {{0, 1, 2}, {3, 4, 5}};
            if (rng.coin()) x3c.sets.push_back({rng.range(0, 1), 2, rng.range(3, 4) + 1});
        } else if (i % 3 == 1) {
            x3c.m = 2;
            x3c.sets = {{0, 1, 2}, {0, 3, 4}, {0, 1, 5}};
            if (rng.coin()) x3c.sets.push_back({0, rng.range(1, 2), rng.range(3, 5)});
        } else {
            x3c.m = 1;
            const int copies = rng.range(2, 4);
            for (int s = 0; s < copies; ++s) x3c.sets.push_back({0, 1, 2});
        }
        for (auto& set : x3c.sets) std::sort(set.begin(), set.end());
        x3c_suite.push_back(x3c);
    }
    int x3c_yes = 0, x3c_no = 0;
    for (const X3CInstance& x3c : x3c_suite) (x3c_oracle(x3c) ? x3c_yes : x3c_no) += 1;
    EXPECT(x3c_yes >= 4);
    EXPECT(x3c_no >= 4);

    for (const X3CInstance& x3c : x3c_suite) {
        if (x3c.m >= 2) EXPECT(verify_reduction(ReductionKind::AddingVoters, x3c).agreement);
        EXPECT(verify_reduction(ReductionKind::DeletingVoters, x3c).agreement);
        EXPECT(verify_reduction(ReductionKind::PartitionVotersTe, x3c).agreement);
    }

    // The ties-promote construction only fits the partition cap at m=1, n=3.
    const X3CInstance tp_instance{1, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
    EXPECT(verify_reduction(ReductionKind::PartitionVotersTp, tp_instance).agreement);

    // Destructive voter-partition members small enough for the cap.
    const std::vector<HittingSetInstance> duo_suite = {
        {2, {{0, 1}}, 1},
        {2, {{0, 1}, {1}}, 1},
        {2, {{0}, {1}}, 1},  // unhittable with one pick
        {3, {{0, 1, 2}}, 1},
    };
    for (const HittingSetInstance& hs : duo_suite)
        EXPECT(verify_reduction(ReductionKind::DestructivePartitionVotersTp, hs).agreement);

    EXPECT(now_ms() - start <= 600000);
}

// ---- criterion 5: exhaustive bipartition sweep -------------------------------

void criterion_exhaustive_sweep() {
    const long long start = now_ms();
    const HittingSetInstance hs{2, {{0, 1}}, 1};
    EXPECT(count_bipartitions(
               reduce_destructive_partition_voters_tp(hs).election.voter_count()) == 32768);
    const VerificationReport report =
        verify_reduction(ReductionKind::DestructivePartitionVotersTp, hs);
    EXPECT(report.agreement);
    bool swept = false;
    for (const std::string& check : report.checks)
        if (check.find("every voter bipartition") != std::string::npos) swept = true;
    EXPECT(swept);
    EXPECT(now_ms() - start <= 60000);
}

// ---- criterion 6: polynomial routines against the exhaustive solver ----------

void criterion_poly_agreement() {
    const long long start = now_ms();
    testsupport::Rng rng(60606);

    for (int trial = 0; trial < 500; ++trial) {
        const Election e = testsupport::random_election(rng, 6, 4, 2, 4);
        const int m = e.candidate_count();
        const int target = rng.range(0, m - 1);
        std::vector<Ballot> pool;
        for (int g = rng.range(0, 4); g > 0; --g)
            pool.push_back(Ballot{testsupport::random_ballot(rng, m, 4), rng.range(1, 2)});
        Score pool_total = 0;
        for (const Ballot& b : pool) pool_total += b.multiplicity;
        const Score budget = std::min<Score>(rng.range(0, 4), pool_total);

        ControlInstance inst;
        inst.type = parse_control_code("destructive-add-voters");
        inst.election = e;
        inst.pool = pool;
        inst.budget = budget;
        inst.target = target;
        const SolveReport exact = solve_exact(inst);
        const PolyResult fast = solve_destructive_add_voters(e, pool, target, budget);
        EXPECT(fast.possible == exact.decision);
        if (fast.possible) {
            EXPECT(static_cast<Score>(fast.voters.size()) <= budget);
            const WinnerResult replay = apply_witness(inst, AddedVoters{fast.voters});
            EXPECT(goal_met(Goal::Destructive, target, replay));
        }
    }

    for (int trial = 0; trial < 500; ++trial) {
        const Election e = testsupport::random_election(rng, 6, 4, 2, 4);
        const int m = e.candidate_count();
        const int target = rng.range(0, m - 1);
        const Score budget = std::min<Score>(rng.range(0, 4), e.voter_count());

        ControlInstance inst;
        inst.type = parse_control_code("destructive-delete-voters");
        inst.election = e;
        inst.budget = budget;
        inst.target = target;
        const SolveReport exact = solve_exact(inst);
        const PolyResult fast = solve_destructive_delete_voters(e, target, budget);
        EXPECT(fast.possible == exact.decision);
        if (fast.possible) {
            EXPECT(static_cast<Score>(fast.voters.size()) <= budget);
            const WinnerResult replay = apply_witness(inst, DeletedVoters{fast.voters});
            EXPECT(goal_met(Goal::Destructive, target, replay));
        }
    }

    EXPECT(now_ms() - start <= 120000);
}

// ---- criterion 7: property suites on random elections ------------------------

void criterion_property_suites() {
    const long long start = now_ms();
    testsupport::Rng rng(70707);

    for (int trial = 0; trial < 1000; ++trial) {
        const Election e = testsupport::random_election(rng, 6, 5, 3);
        const int m = e.candidate_count();

        // Level scores never decrease and end at the approval count.
        for (int c = 0; c < m; ++c) {
            for (int i = 1; i < m; ++i) EXPECT(e.level_score(c, i) <= e.level_score(c, i + 1));
            EXPECT(e.level_score(c, m) == e.approval_score(c));
        }

        // Voiced: with candidates present, someone always wins.
        EXPECT(!e.fallback_winners().winners.empty());

        // Run-off candidate partitions and voter partitions ignore side order.
        std::vector<int> first, second;
        for (int c = 0; c < m; ++c) (rng.coin() ? first : second).push_back(c);
        const TieRule tie = rng.coin() ? TieRule::TiesEliminate : TieRule::TiesPromote;
        const PartitionOutcome ab = evaluate_candidate_partition(e, first, second, tie, true);
        const PartitionOutcome ba = evaluate_candidate_partition(e, second, first, tie, true);
        EXPECT(ab.final_round.winners == ba.final_round.winners);
        if (tie == TieRule::TiesEliminate) EXPECT(ab.finalists.size() <= 2);

        std::vector<long long> side1, side2;
        for (long long v = 0; v < e.voter_count(); ++v) (rng.coin() ? side1 : side2).push_back(v);
        const PartitionOutcome vp = evaluate_voter_partition(e, side1, tie);
        const PartitionOutcome pv = evaluate_voter_partition(e, side2, tie);
        EXPECT(vp.final_round.winners == pv.final_round.winners);
        EXPECT(vp.finalists == pv.finalists);
        if (tie == TieRule::TiesEliminate) EXPECT(vp.finalists.size() <= 2);

        // Restriction keeps every voter and every kept approval count.
        std::vector<int> kept;
        for (int c = 0; c < m; ++c)
            if (rng.coin()) kept.push_back(c);
        if (kept.empty()) kept.push_back(rng.range(0, m - 1));
        const Election sub = e.restrict(kept);
        EXPECT(sub.voter_count() == e.voter_count());
        for (size_t i = 0; i < kept.size(); ++i)
            EXPECT(sub.approval_score(static_cast<int>(i)) == e.approval_score(kept[i]));
    }

    EXPECT(now_ms() - start <= 30000);
}

// ---- criterion 8: round-trips and CLI determinism ----------------------------

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args, const std::filesystem::path& out) {
    const std::string cmd =
        "\"" + g_cli_path + "\" " + args + " > \"" + out.string() + "\" 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_roundtrip_determinism() {
    // Canonical files reparse to the same election.
    const Election e1 = testsupport::example_one();
    EXPECT(parse_election(serialize_election(e1)) == e1);
    const std::string canonical = serialize_election(e1);
    EXPECT(serialize_election(parse_election(canonical)) == canonical);
    testsupport::Rng rng(80808);
    for (int trial = 0; trial < 50; ++trial) {
        const Election e = testsupport::random_election(rng, 6, 5, 4);
        EXPECT(parse_election(serialize_election(e)) == e);
    }

    EXPECT(!g_cli_path.empty());
    if (g_cli_path.empty()) return;

    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / ("fv-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path election_file = dir / "e1.fv";
    std::ofstream(election_file) << canonical;

    const std::string quoted = "\"" + election_file.string() + "\"";
    const std::vector<std::pair<std::string, int>> commands = {
        {"winner " + quoted, 0},
        {"control --type partition-candidates --mode destructive --tie te --target a --election " +
             quoted,
         0},
        {"control --type delete-candidates --mode constructive --budget 1 --target c --election " +
             quoted,
         0},
        {"poly-control --action delete-voters --budget 2 --target a --election " + quoted, 0},
    };
    for (size_t i = 0; i < commands.size(); ++i) {
        const fs::path out1 = dir / ("out-" + std::to_string(i) + "-1.json");
        const fs::path out2 = dir / ("out-" + std::to_string(i) + "-2.json");
        const int rc1 = run_cli(commands[i].first, out1);
        const int rc2 = run_cli(commands[i].first, out2);
        EXPECT(rc1 == commands[i].second);
        EXPECT(rc2 == commands[i].second);
        const std::string bytes1 = slurp(out1);
        const std::string bytes2 = slurp(out2);
        EXPECT(!bytes1.empty());
        EXPECT(bytes1 == bytes2);
    }

    std::error_code ec;
    fs::remove_all(dir, ec);
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") g_cli_path = argv[i + 1];

    const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
        {"fixture exactness", criterion_fixture_exactness},
        {"partition susceptibility replays", criterion_partition_replays},
        {"construction score identities", criterion_score_identities},
        {"reduction equivalence", criterion_reduction_equivalence},
        {"exhaustive bipartition sweep", criterion_exhaustive_sweep},
        {"polynomial routine agreement", criterion_poly_agreement},
        {"property suites", criterion_property_suites},
        {"round-trip and determinism", criterion_roundtrip_determinism},
    };

    for (size_t i = 0; i < criteria.size(); ++i) {
        const int before = g_failures;
        const long long start = now_ms();
        try {
            criteria[i].second();
        } catch (const std::exception& ex) {
            ++g_failures;
            std::printf("FAIL criterion %zu threw: %s\n", i + 1, ex.what());
        }
        const bool ok = g_failures == before;
        std::printf("criterion %zu: %s (%s, %lld ms)\n", i + 1, ok ? "PASS" : "FAIL",
                    criteria[i].first, now_ms() - start);
        std::fflush(stdout);
    }

    if (g_failures > 0) {
        std::printf("%d expectation(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
