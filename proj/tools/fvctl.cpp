// fvctl: command-line front end for the fallback-voting control toolkit.
//
// Subcommands:
//   winner FILE            compute fallback winners of an election file
//   control                decide a control question exhaustively, with witness
//   poly-control           run the polynomial destructive voter-control routines
//   reduce                 build a control instance from a hitting-set / exact-cover source
//   verify                 replay constructions against their source oracles
//
// Reports are JSON documents on stdout (deterministic for fixed inputs); pass
// --text for plain lines instead. Exit codes: 0 yes/winners/agreement,
// 1 no/impossible/disagreement, 2 usage, parse, contract, or internal errors,
// 3 instance over solver caps.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fv/control.hpp"
#include "fv/exact_solver.hpp"
#include "fv/io.hpp"
#include "fv/poly_solver.hpp"
#include "fv/reductions.hpp"

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::string resolution_name(fv::Resolution r) {
    return r == fv::Resolution::MajorityLevel ? "majority-level" : "approval-fallback";
}

std::string joined_names(const fv::Election& e, const std::vector<int>& ids) {
    std::string out;
    for (int id : ids) {
        if (!out.empty()) out += ' ';
        out += e.candidate_name(id);
    }
    return out;
}

template <class T>
std::string joined_numbers(const std::vector<T>& values) {
    std::string out;
    for (const T& v : values) {
        if (!out.empty()) out += ' ';
        out += std::to_string(v);
    }
    return out;
}

json names_json(const fv::Election& e, const std::vector<int>& ids) {
    json arr = json::array();
    for (int id : ids) arr.push_back(e.candidate_name(id));
    return arr;
}

std::string labeled(const std::string& label, const std::string& items) {
    return items.empty() ? label : label + " " + items;
}

std::string witness_text(const fv::Election& e, const fv::Witness& witness) {
    return std::visit(
        overloaded{
            [&](const fv::AddedCandidates& w) {
                return labeled("added-candidates", joined_names(e, w.candidates));
            },
            [&](const fv::DeletedCandidates& w) {
                return labeled("deleted-candidates", joined_names(e, w.candidates));
            },
            [&](const fv::AddedVoters& w) {
                return labeled("added-voters", joined_numbers(w.pool_voters));
            },
            [&](const fv::DeletedVoters& w) {
                return labeled("deleted-voters", joined_numbers(w.voters));
            },
            [&](const fv::CandidatePartition& w) {
                return "candidate-partition first: " + joined_names(e, w.first) +
                       " second: " + joined_names(e, w.second);
            },
            [&](const fv::VoterPartition& w) {
                return "voter-partition first: " + joined_numbers(w.first_voters);
            },
        },
        witness);
}

json witness_json(const fv::Election& e, const fv::Witness& witness) {
    return std::visit(
        overloaded{
            [&](const fv::AddedCandidates& w) {
                return json{{"kind", "added-candidates"}, {"candidates", names_json(e, w.candidates)}};
            },
            [&](const fv::DeletedCandidates& w) {
                return json{{"kind", "deleted-candidates"}, {"candidates", names_json(e, w.candidates)}};
            },
            [&](const fv::AddedVoters& w) {
                return json{{"kind", "added-voters"}, {"pool-voters", w.pool_voters}};
            },
            [&](const fv::DeletedVoters& w) {
                return json{{"kind", "deleted-voters"}, {"voters", w.voters}};
            },
            [&](const fv::CandidatePartition& w) {
                return json{{"kind", "candidate-partition"},
                            {"first", names_json(e, w.first)},
                            {"second", names_json(e, w.second)}};
            },
            [&](const fv::VoterPartition& w) {
                return json{{"kind", "voter-partition"}, {"first-voters", w.first_voters}};
            },
        },
        witness);
}

// Canonical text fed to the digest so identical inputs yield identical reports.
std::string canonical_instance_text(const fv::ControlInstance& inst) {
    std::string canon = "control: " + fv::control_code(inst.type) + "\n";
    canon += "target: " + inst.election.candidate_name(inst.target) + "\n";
    if (inst.budget) canon += "budget: " + std::to_string(*inst.budget) + "\n";
    if (!inst.spoilers.empty()) canon += "spoilers: " + joined_names(inst.election, inst.spoilers) + "\n";
    canon += fv::serialize_election(inst.election);
    if (!inst.pool.empty()) {
        fv::Election pool_view(inst.election.candidates());
        for (const fv::Ballot& b : inst.pool) pool_view.add_ballot(b.ranked, b.multiplicity);
        canon += "pool:\n" + fv::serialize_election(pool_view);
    }
    return canon;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw fv::ContractError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw fv::ContractError("failed while writing '" + path + "'");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long elapsed_ms() const {
        auto d = std::chrono::steady_clock::now() - start;
        return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
    }
};

// Elapsed time goes to stderr on request so stdout reports stay byte-identical
// across runs of the same inputs.
void report_timing(bool enabled, const Timer& timer) {
    if (enabled) std::cerr << "elapsed-ms: " << timer.elapsed_ms() << "\n";
}

// The CLI names actions; the mode flag and tie flag pick the full control type.
fv::ControlType control_type_from_flags(const std::string& action_name, const std::string& mode,
                                        const std::string& tie) {
    static const std::vector<std::pair<std::string, fv::Action>> actions = {
        {"add-candidates-limited", fv::Action::AddCandidates},
        {"add-candidates-unlimited", fv::Action::AddCandidatesUnlimited},
        {"delete-candidates", fv::Action::DeleteCandidates},
        {"partition-candidates", fv::Action::PartitionCandidates},
        {"runoff-partition-candidates", fv::Action::RunoffPartitionCandidates},
        {"add-voters", fv::Action::AddVoters},
        {"delete-voters", fv::Action::DeleteVoters},
        {"partition-voters", fv::Action::PartitionVoters},
    };
    fv::ControlType type;
    bool found = false;
    for (const auto& [name, action] : actions)
        if (name == action_name) {
            type.action = action;
            found = true;
        }
    if (!found) throw fv::ContractError("unknown control action: " + action_name);
    type.goal = mode == "destructive" ? fv::Goal::Destructive : fv::Goal::Constructive;
    if (!tie.empty()) {
        if (!fv::action_is_partition(type.action))
            throw fv::ContractError("--tie applies only to partition control");
        type.tie_rule = tie == "tp" ? fv::TieRule::TiesPromote : fv::TieRule::TiesEliminate;
    } else if (fv::action_is_partition(type.action)) {
        throw fv::ContractError("partition control needs --tie te or --tie tp");
    }
    return type;
}

struct SolveOpts {
    std::string election_path;
    std::string action;
    std::string mode = "constructive";
    std::string tie;
    std::string target_name;
    long long budget = 0;
    bool budget_set = false;
    std::string pool_path;
    bool text = false;
    bool timing = false;
};

// Assemble a control instance from the parsed files. The pool file is read as
// a second election: for voter addition its candidate header must match the
// base election and its ballots become the pool; for candidate addition its
// header names the spoiler candidates and it must carry no ballots.
fv::ControlInstance assemble_instance(const SolveOpts& opts, fv::ControlType type) {
    fv::ControlInstance inst;
    inst.type = type;
    inst.election = fv::parse_election_file(opts.election_path);
    inst.target = inst.election.candidate_index(opts.target_name);
    if (opts.budget_set) inst.budget = opts.budget;
    if (!opts.pool_path.empty()) {
        const fv::Election pool = fv::parse_election_file(opts.pool_path);
        if (inst.type.action == fv::Action::AddVoters) {
            if (pool.candidates() != inst.election.candidates())
                throw fv::ContractError("pool file must list the same candidates as the election");
            inst.pool = pool.ballots();
        } else if (inst.type.action == fv::Action::AddCandidates ||
                   inst.type.action == fv::Action::AddCandidatesUnlimited) {
            if (!pool.ballots().empty())
                throw fv::ContractError("spoiler pool file must not contain ballots");
            for (const std::string& name : pool.candidates())
                inst.spoilers.push_back(inst.election.candidate_index(name));
        } else {
            throw fv::ContractError("--pool applies only to voter or candidate addition");
        }
    }
    return inst;
}

int run_winner(const std::string& path, bool text, bool timing) {
    const Timer timer;
    const fv::Election e = fv::parse_election_file(path);
    const fv::WinnerResult result = e.fallback_winners();
    const std::string digest = fv::digest_hex(fv::serialize_election(e));
    if (text) {
        std::cout << "winners: " << joined_names(e, result.winners) << "\n";
        std::cout << "resolution: " << resolution_name(result.resolution) << "\n";
        std::cout << "level: " << result.level << "\n";
        std::cout << "score: " << result.top_score << "\n";
    } else {
        json r;
        r["command"] = "winner";
        r["winners"] = names_json(e, result.winners);
        r["resolution"] = resolution_name(result.resolution);
        r["level"] = result.level;
        r["score"] = result.top_score;
        r["inputs-digest"] = digest;
        std::cout << r.dump(2) << "\n";
    }
    report_timing(timing, timer);
    return 0;
}

int run_control(const SolveOpts& opts, const fv::SolveLimits& limits) {
    const Timer timer;
    const fv::ControlType type = control_type_from_flags(opts.action, opts.mode, opts.tie);
    const fv::ControlInstance inst = assemble_instance(opts, type);
    const fv::SolveReport report = fv::solve_exact(inst, limits);
    const std::string digest = fv::digest_hex(canonical_instance_text(inst));
    if (opts.text) {
        std::cout << "control: " << fv::control_code(inst.type) << "\n";
        std::cout << "decision: " << (report.decision ? "yes" : "no") << "\n";
        if (report.witness)
            std::cout << "witness: " << witness_text(inst.election, *report.witness) << "\n";
        std::cout << "explored: " << report.explored << "\n";
    } else {
        json r;
        r["command"] = "control";
        r["control"] = fv::control_code(inst.type);
        r["decision"] = report.decision ? "yes" : "no";
        r["witness"] = report.witness ? witness_json(inst.election, *report.witness) : json();
        r["explored"] = report.explored;
        r["limits"] = {{"max-subsets", limits.max_subsets}, {"max-partitions", limits.max_partitions}};
        r["inputs-digest"] = digest;
        std::cout << r.dump(2) << "\n";
    }
    report_timing(opts.timing, timer);
    return report.decision ? 0 : 1;
}

int run_poly(const SolveOpts& opts) {
    const Timer timer;
    if (opts.action != "add-voters" && opts.action != "delete-voters")
        throw fv::ContractError("poly-control handles --action add-voters or delete-voters");
    fv::ControlType type;
    type.action = opts.action == "add-voters" ? fv::Action::AddVoters : fv::Action::DeleteVoters;
    type.goal = fv::Goal::Destructive;
    const fv::ControlInstance inst = assemble_instance(opts, type);
    if (!inst.budget) throw fv::ContractError("poly-control requires --budget");
    const fv::PolyResult result =
        type.action == fv::Action::AddVoters
            ? fv::solve_destructive_add_voters(inst.election, inst.pool, inst.target, *inst.budget)
            : fv::solve_destructive_delete_voters(inst.election, inst.target, *inst.budget);
    const std::string digest = fv::digest_hex(canonical_instance_text(inst));
    if (opts.text) {
        std::cout << "control: " << fv::control_code(inst.type) << "\n";
        std::cout << "decision: " << (result.possible ? "possible" : "impossible") << "\n";
        if (result.possible) std::cout << "voters: " << joined_numbers(result.voters) << "\n";
        std::cout << "stage-level: " << result.stage_level << "\n";
        std::cout << "note: " << result.note << "\n";
        std::cout << "checks: " << result.checks << "\n";
    } else {
        json r;
        r["command"] = "poly-control";
        r["control"] = fv::control_code(inst.type);
        r["decision"] = result.possible ? "possible" : "impossible";
        r["voters"] = result.voters;
        r["stage-level"] = result.stage_level;
        r["note"] = result.note;
        r["checks"] = result.checks;
        r["inputs-digest"] = digest;
        std::cout << r.dump(2) << "\n";
    }
    report_timing(opts.timing, timer);
    return result.possible ? 0 : 1;
}

struct ReduceOpts {
    std::string construction;
    std::string source_path;
    std::string goal = "constructive";
    std::string tie = "te";
    bool runoff = false;
    bool unlimited = false;
    std::string out_path;
    std::string pool_out_path;
};

fv::ControlInstance build_from_source(const ReduceOpts& opts, fv::ReductionKind kind) {
    const std::string text = fv::read_text_file(opts.source_path);
    const fv::Goal goal =
        opts.goal == "destructive" ? fv::Goal::Destructive : fv::Goal::Constructive;
    const fv::TieRule tie =
        opts.tie == "tp" ? fv::TieRule::TiesPromote : fv::TieRule::TiesEliminate;
    using K = fv::ReductionKind;
    if (fv::reduction_kind_uses_hitting_set(kind)) {
        const fv::HittingSetInstance hs = fv::parse_hitting_set(text);
        switch (kind) {
            case K::CandidateControlAdding:
                return fv::reduce_candidate_control_adding(hs, goal, !opts.unlimited);
            case K::CandidateControlDeletingDestructive:
                return fv::reduce_candidate_control_deleting_destructive(hs);
            case K::CandidateControlPartition:
                return fv::reduce_candidate_control_partition(hs, goal, tie, opts.runoff);
            case K::DeletingCandidatesConstructive:
                return fv::reduce_deleting_candidates_constructive(hs);
            default:
                return fv::reduce_destructive_partition_voters_tp(hs);
        }
    }
    const fv::X3CInstance x3c = fv::parse_x3c(text);
    switch (kind) {
        case K::AddingVoters:
            return fv::reduce_adding_voters(x3c);
        case K::DeletingVoters:
            return fv::reduce_deleting_voters(x3c);
        case K::PartitionVotersTe:
            return fv::reduce_partition_voters_te(x3c);
        default:
            return fv::reduce_partition_voters_tp(x3c);
    }
}

int run_reduce(const ReduceOpts& opts) {
    const std::optional<fv::ReductionKind> kind = fv::parse_reduction_kind(opts.construction);
    if (!kind) throw fv::ContractError("unknown construction: " + opts.construction);
    const fv::ControlInstance inst = build_from_source(opts, *kind);

    std::string text = "# control: " + fv::control_code(inst.type) + "\n";
    text += "# target: " + inst.election.candidate_name(inst.target) + "\n";
    if (inst.budget) text += "# budget: " + std::to_string(*inst.budget) + "\n";
    if (!inst.spoilers.empty())
        text += "# spoilers: " + joined_names(inst.election, inst.spoilers) + "\n";
    text += fv::serialize_election(inst.election);

    const bool needs_pool_file = !inst.pool.empty() || !inst.spoilers.empty();
    if (needs_pool_file && opts.pool_out_path.empty())
        throw fv::ContractError("this construction emits a pool; provide --pool-out");
    if (needs_pool_file) {
        if (!inst.pool.empty()) {
            fv::Election pool_view(inst.election.candidates());
            for (const fv::Ballot& b : inst.pool) pool_view.add_ballot(b.ranked, b.multiplicity);
            write_text_file(opts.pool_out_path, fv::serialize_election(pool_view));
        } else {
            std::vector<std::string> spoiler_names;
            for (int s : inst.spoilers) spoiler_names.push_back(inst.election.candidate_name(s));
            write_text_file(opts.pool_out_path, fv::serialize_election(fv::Election(spoiler_names)));
        }
    }
    if (opts.out_path.empty())
        std::cout << text;
    else
        write_text_file(opts.out_path, text);
    return 0;
}

struct VerifyOpts {
    std::string construction;
    std::string source_path;
    std::string suite;
    bool text = false;
    bool timing = false;
};

struct SuiteEntry {
    std::optional<fv::ReductionKind> kind;  // absent: run every kind for the source family
    std::optional<fv::HittingSetInstance> hs;
    std::optional<fv::X3CInstance> x3c;
};

// Small mixed yes/no battery sized so every member fits the solver caps.
std::vector<SuiteEntry> small_suite() {
    using K = fv::ReductionKind;
    const fv::HittingSetInstance hs_yes{3, {{0, 1}, {0, 2}}, 1};
    const fv::HittingSetInstance hs_no{3, {{0, 1}, {2}}, 1};
    const fv::X3CInstance x3c_yes{2, {{0, 1, 2}, {3, 4, 5}}};
    const fv::X3CInstance x3c_no{2, {{0, 1, 2}, {0, 3, 4}}};
    std::vector<SuiteEntry> entries;
    for (K kind : {K::CandidateControlAdding, K::CandidateControlDeletingDestructive,
                   K::CandidateControlPartition, K::DeletingCandidatesConstructive}) {
        entries.push_back({kind, hs_yes, std::nullopt});
        entries.push_back({kind, hs_no, std::nullopt});
    }
    for (K kind : {K::AddingVoters, K::DeletingVoters, K::PartitionVotersTe}) {
        entries.push_back({kind, std::nullopt, x3c_yes});
        entries.push_back({kind, std::nullopt, x3c_no});
    }
    // The ties-promote voter construction needs more sets than m+1; with m = 1
    // every valid triple covers, so only a yes member stays this small.
    entries.push_back({K::PartitionVotersTp,
                       std::nullopt,
                       fv::X3CInstance{1, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}}});
    entries.push_back({K::DestructivePartitionVotersTp,
                       fv::HittingSetInstance{2, {{0, 1}}, 1},
                       std::nullopt});
    entries.push_back({K::DestructivePartitionVotersTp,
                       fv::HittingSetInstance{2, {{0}, {1}}, 1},
                       std::nullopt});
    return entries;
}

SuiteEntry entry_from_json(const json& j) {
    SuiteEntry entry;
    if (j.contains("kind")) {
        entry.kind = fv::parse_reduction_kind(j.at("kind").get<std::string>());
        if (!entry.kind)
            throw fv::ParseError("unknown construction: " + j.at("kind").get<std::string>(), 0);
    }
    const json& source = j.contains("source") ? j.at("source") : j;
    if (source.contains("k"))
        entry.hs = fv::parse_hitting_set(source.dump());
    else
        entry.x3c = fv::parse_x3c(source.dump());
    return entry;
}

std::vector<SuiteEntry> parse_suite_file(const std::string& path) {
    json j;
    try {
        j = json::parse(fv::read_text_file(path));
    } catch (const json::exception& err) {
        throw fv::ParseError(std::string("invalid JSON: ") + err.what(), 0);
    }
    if (!j.is_array()) throw fv::ParseError("suite file must hold a JSON array", 0);
    std::vector<SuiteEntry> entries;
    try {
        for (const json& item : j) entries.push_back(entry_from_json(item));
    } catch (const json::exception& err) {
        throw fv::ParseError(std::string("malformed suite entry: ") + err.what(), 0);
    }
    return entries;
}

// Expand entries without an explicit kind into one run per matching kind.
std::vector<std::pair<fv::ReductionKind, SuiteEntry>> expand_entries(
    const std::vector<SuiteEntry>& entries) {
    std::vector<std::pair<fv::ReductionKind, SuiteEntry>> runs;
    for (const SuiteEntry& entry : entries) {
        if (entry.kind) {
            runs.emplace_back(*entry.kind, entry);
            continue;
        }
        for (fv::ReductionKind kind : fv::all_reduction_kinds())
            if (fv::reduction_kind_uses_hitting_set(kind) == entry.hs.has_value())
                runs.emplace_back(kind, entry);
    }
    return runs;
}

fv::VerificationReport run_entry(fv::ReductionKind kind, const SuiteEntry& entry,
                                 const fv::SolveLimits& limits) {
    if (fv::reduction_kind_uses_hitting_set(kind) != entry.hs.has_value())
        throw fv::ContractError("source family does not match construction " +
                                fv::reduction_kind_name(kind));
    return entry.hs ? fv::verify_reduction(kind, *entry.hs, limits)
                    : fv::verify_reduction(kind, *entry.x3c, limits);
}

json verification_json(fv::ReductionKind kind, const fv::VerificationReport& report) {
    json variants = json::array();
    for (const fv::VariantOutcome& v : report.variants)
        variants.push_back({{"control", v.control_code},
                            {"decision", v.decision ? "yes" : "no"},
                            {"explored", v.explored}});
    std::vector<int> witness_one_based;
    for (int x : report.source_witness) witness_one_based.push_back(x + 1);
    json r;
    r["kind"] = fv::reduction_kind_name(kind);
    r["source-yes"] = report.source_yes;
    r["source-witness"] = witness_one_based;
    r["variants"] = variants;
    r["checks"] = report.checks;
    r["agreement"] = report.agreement;
    return r;
}

void print_verification(fv::ReductionKind kind, const fv::VerificationReport& report) {
    std::cout << "kind: " << fv::reduction_kind_name(kind) << "\n";
    std::cout << "source: " << (report.source_yes ? "yes" : "no") << "\n";
    if (report.source_yes) {
        std::vector<int> one_based;
        for (int x : report.source_witness) one_based.push_back(x + 1);
        std::cout << "source-witness: " << joined_numbers(one_based) << "\n";
    }
    for (const fv::VariantOutcome& v : report.variants)
        std::cout << "variant " << v.control_code << ": " << (v.decision ? "yes" : "no")
                  << " (explored " << v.explored << ")\n";
    for (const std::string& check : report.checks) std::cout << "check: " << check << "\n";
    std::cout << "agreement: " << (report.agreement ? "yes" : "no") << "\n";
}

int run_verify(const VerifyOpts& opts, const fv::SolveLimits& limits) {
    const Timer timer;
    std::optional<fv::ReductionKind> kind;
    if (!opts.construction.empty()) {
        kind = fv::parse_reduction_kind(opts.construction);
        if (!kind) throw fv::ContractError("unknown construction: " + opts.construction);
    }

    std::vector<SuiteEntry> entries;
    bool single = false;
    std::string digest_seed;
    if (!opts.suite.empty()) {
        entries = opts.suite == "small" ? small_suite() : parse_suite_file(opts.suite);
        digest_seed = opts.suite == "small" ? std::string("suite:small")
                                            : "suite:" + fv::read_text_file(opts.suite);
        if (kind) {
            // A named construction narrows the suite to its own members.
            std::vector<SuiteEntry> kept;
            for (SuiteEntry& entry : entries) {
                if (entry.kind && *entry.kind != *kind) continue;
                if (fv::reduction_kind_uses_hitting_set(*kind) != entry.hs.has_value()) continue;
                entry.kind = kind;
                kept.push_back(entry);
            }
            entries = std::move(kept);
        }
    } else if (!opts.source_path.empty()) {
        const std::string text = fv::read_text_file(opts.source_path);
        digest_seed = "source:" + text;
        SuiteEntry entry;
        const bool wants_hs =
            kind ? fv::reduction_kind_uses_hitting_set(*kind) : text.find("\"k\"") != std::string::npos;
        if (wants_hs)
            entry.hs = fv::parse_hitting_set(text);
        else
            entry.x3c = fv::parse_x3c(text);
        entry.kind = kind;
        entries.push_back(entry);
        single = kind.has_value();
    } else {
        throw fv::ContractError("verify needs --suite or --source");
    }

    const auto runs = expand_entries(entries);
    if (runs.empty()) throw fv::ContractError("nothing to verify");
    const std::string digest =
        fv::digest_hex((kind ? fv::reduction_kind_name(*kind) : std::string("all")) + "\n" + digest_seed);

    if (single) {
        const fv::VerificationReport report = run_entry(runs[0].first, runs[0].second, limits);
        if (opts.text) {
            print_verification(runs[0].first, report);
        } else {
            json r = verification_json(runs[0].first, report);
            r["command"] = "verify";
            r["inputs-digest"] = digest;
            std::cout << r.dump(2) << "\n";
        }
        report_timing(opts.timing, timer);
        return report.agreement ? 0 : 1;
    }

    int agreed = 0;
    json entries_json = json::array();
    for (size_t i = 0; i < runs.size(); ++i) {
        const fv::VerificationReport report = run_entry(runs[i].first, runs[i].second, limits);
        if (report.agreement) ++agreed;
        if (opts.text)
            std::cout << "[" << (i + 1) << "/" << runs.size() << "] "
                      << fv::reduction_kind_name(runs[i].first)
                      << ": source=" << (report.source_yes ? "yes" : "no")
                      << " agreement=" << (report.agreement ? "yes" : "no") << "\n";
        else
            entries_json.push_back(verification_json(runs[i].first, report));
    }
    if (opts.text) {
        std::cout << "suite: " << agreed << "/" << runs.size() << " agreed\n";
    } else {
        json r;
        r["command"] = "verify-suite";
        r["entries"] = entries_json;
        r["agreed"] = agreed;
        r["total"] = static_cast<long long>(runs.size());
        r["inputs-digest"] = digest;
        std::cout << r.dump(2) << "\n";
    }
    report_timing(opts.timing, timer);
    return agreed == static_cast<int>(runs.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fallback-voting electoral control toolkit"};
    app.require_subcommand(1);

    fv::SolveLimits limits;
    std::string winner_path;
    bool winner_text = false, winner_timing = false;
    SolveOpts control_opts, poly_opts;
    ReduceOpts reduce_opts;
    VerifyOpts verify_opts;
    bool control_budget_given = false, poly_budget_given = false;

    CLI::App* winner = app.add_subcommand("winner", "compute fallback winners");
    winner->add_option("file", winner_path, "election file")->required();
    winner->add_flag("--text", winner_text, "plain lines instead of a JSON report");
    winner->add_flag("--timing", winner_timing, "report elapsed time on stderr");

    CLI::App* control = app.add_subcommand("control", "decide a control question exhaustively");
    control->add_option("--type", control_opts.action, "control action name")->required();
    control->add_option("--mode", control_opts.mode, "constructive or destructive")
        ->required()
        ->check(CLI::IsMember({"constructive", "destructive"}));
    control->add_option("--tie", control_opts.tie, "tie handling for partitions: te or tp")
        ->check(CLI::IsMember({"te", "tp"}));
    control->add_option("--target", control_opts.target_name, "target candidate")->required();
    control->add_option("--election", control_opts.election_path, "election file")->required();
    CLI::Option* cb = control->add_option("--budget", control_opts.budget, "action budget");
    control->add_option("--pool", control_opts.pool_path,
                        "pool file (voters to add, or spoiler candidate names)");
    control->add_option("--max-subsets", limits.max_subsets, "subset enumeration cap");
    control->add_option("--max-partitions", limits.max_partitions, "partition enumeration cap");
    control->add_flag("--text", control_opts.text, "plain lines instead of a JSON report");
    control->add_flag("--timing", control_opts.timing, "report elapsed time on stderr");
    cb->each([&control_budget_given](const std::string&) { control_budget_given = true; });

    CLI::App* poly = app.add_subcommand("poly-control", "run the polynomial destructive routines");
    poly->add_option("--action", poly_opts.action, "add-voters or delete-voters")
        ->required()
        ->check(CLI::IsMember({"add-voters", "delete-voters"}));
    poly->add_option("--target", poly_opts.target_name, "target candidate")->required();
    poly->add_option("--election", poly_opts.election_path, "election file")->required();
    CLI::Option* pb = poly->add_option("--budget", poly_opts.budget, "action budget")->required();
    poly->add_option("--pool", poly_opts.pool_path, "pool file for voter addition");
    poly->add_flag("--text", poly_opts.text, "plain lines instead of a JSON report");
    poly->add_flag("--timing", poly_opts.timing, "report elapsed time on stderr");
    pb->each([&poly_budget_given](const std::string&) { poly_budget_given = true; });

    CLI::App* reduce = app.add_subcommand("reduce", "build a control instance from a source problem");
    reduce->add_option("--construction", reduce_opts.construction, "construction name")->required();
    reduce->add_option("--source", reduce_opts.source_path, "source instance JSON file")->required();
    reduce->add_option("--goal", reduce_opts.goal, "constructive or destructive")
        ->check(CLI::IsMember({"constructive", "destructive"}));
    reduce->add_option("--tie", reduce_opts.tie, "tie handling for partitions: te or tp")
        ->check(CLI::IsMember({"te", "tp"}));
    reduce->add_flag("--runoff", reduce_opts.runoff, "use the runoff partition variant");
    reduce->add_flag("--unlimited", reduce_opts.unlimited, "drop the addition budget");
    reduce->add_option("--emit-election", reduce_opts.out_path,
                       "write the election here instead of stdout");
    reduce->add_option("--pool-out", reduce_opts.pool_out_path, "write the pool file here");

    CLI::App* verify = app.add_subcommand("verify", "replay constructions against source oracles");
    verify->add_option("--construction", verify_opts.construction, "construction name");
    verify->add_option("--suite", verify_opts.suite, "'small' or a JSON suite file");
    verify->add_option("--source", verify_opts.source_path, "single source instance JSON file");
    verify->add_option("--max-subsets", limits.max_subsets, "subset enumeration cap");
    verify->add_option("--max-partitions", limits.max_partitions, "partition enumeration cap");
    verify->add_flag("--text", verify_opts.text, "plain lines instead of a JSON report");
    verify->add_flag("--timing", verify_opts.timing, "report elapsed time on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    control_opts.budget_set = control_budget_given;
    poly_opts.budget_set = poly_budget_given;

    try {
        if (winner->parsed()) return run_winner(winner_path, winner_text, winner_timing);
        if (control->parsed()) return run_control(control_opts, limits);
        if (poly->parsed()) return run_poly(poly_opts);
        if (reduce->parsed()) return run_reduce(reduce_opts);
        if (verify->parsed()) return run_verify(verify_opts, limits);
        throw fv::ContractError("no subcommand selected");
    } catch (const fv::TooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
