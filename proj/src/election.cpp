#include "fv/election.hpp"

#include <algorithm>

namespace fv {

Score majority_threshold(Score voters) {
    if (voters < 0) throw ContractError("voter count must be nonnegative");
    return voters / 2 + 1;
}

Election::Election(std::vector<std::string> candidates) : names_(std::move(candidates)) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (names_[i].empty()) throw ContractError("candidate names must be nonempty");
        if (!index_.emplace(names_[i], i).second)
            throw ContractError("duplicate candidate name: " + names_[i]);
    }
}

const std::string& Election::candidate_name(int index) const {
    if (index < 0 || index >= candidate_count())
        throw ContractError("candidate index out of range: " + std::to_string(index));
    return names_[index];
}

int Election::candidate_index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ContractError("unknown candidate: " + name);
    return it->second;
}

std::optional<int> Election::find_candidate(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Election::add_ballot(std::vector<int> ranked, Score multiplicity) {
    if (multiplicity < 1) throw ContractError("ballot multiplicity must be positive");
    std::vector<char> seen(names_.size(), 0);
    for (int c : ranked) {
        if (c < 0 || c >= candidate_count())
            throw ContractError("ballot ranks unknown candidate index " + std::to_string(c));
        if (seen[c]) throw ContractError("ballot ranks " + names_[c] + " twice");
        seen[c] = 1;
    }
    ballots_.push_back(Ballot{std::move(ranked), multiplicity});
    voters_ += multiplicity;
}

void Election::add_ballot(const std::vector<std::string>& ranked, Score multiplicity) {
    std::vector<int> ids;
    ids.reserve(ranked.size());
    for (const std::string& name : ranked) ids.push_back(candidate_index(name));
    add_ballot(std::move(ids), multiplicity);
}

Score Election::level_score(int candidate, int level) const {
    if (candidate < 0 || candidate >= candidate_count())
        throw ContractError("candidate index out of range: " + std::to_string(candidate));
    if (level < 0) throw ContractError("level must be nonnegative");
    Score total = 0;
    for (const Ballot& b : ballots_) {
        const int prefix = std::min<int>(level, static_cast<int>(b.ranked.size()));
        for (int p = 0; p < prefix; ++p) {
            if (b.ranked[p] == candidate) {
                total += b.multiplicity;
                break;
            }
        }
    }
    return total;
}

Score Election::approval_score(int candidate) const {
    return level_score(candidate, candidate_count());
}

WinnerResult Election::fallback_winners() const {
    WinnerResult out;
    const int m = candidate_count();
    if (m == 0) return out;

    const Score maj = majority_threshold(voters_);
    std::vector<Score> cumulative(m, 0);
    auto collect_top = [&](Resolution resolution, int level) {
        Score top = cumulative[0];
        for (Score s : cumulative) top = std::max(top, s);
        for (int c = 0; c < m; ++c)
            if (cumulative[c] == top) out.winners.push_back(c);
        out.resolution = resolution;
        out.level = level;
        out.top_score = top;
    };

    for (int level = 1; level <= m; ++level) {
        bool reached = false;
        for (const Ballot& b : ballots_) {
            if (level <= static_cast<int>(b.ranked.size())) {
                const int c = b.ranked[level - 1];
                cumulative[c] += b.multiplicity;
                if (cumulative[c] >= maj) reached = true;
            }
        }
        if (reached) {
            collect_top(Resolution::MajorityLevel, level);
            return out;
        }
    }
    // cumulative now holds overall approvals
    collect_top(Resolution::ApprovalFallback, 0);
    return out;
}

Election Election::restrict(const std::vector<int>& kept) const {
    std::vector<int> order = kept;
    std::sort(order.begin(), order.end());
    if (std::adjacent_find(order.begin(), order.end()) != order.end())
        throw ContractError("restriction lists a candidate twice");

    std::vector<int> remap(names_.size(), -1);
    std::vector<std::string> sub_names;
    sub_names.reserve(order.size());
    for (int c : order) {
        if (c < 0 || c >= candidate_count())
            throw ContractError("restriction candidate index out of range: " + std::to_string(c));
        remap[c] = static_cast<int>(sub_names.size());
        sub_names.push_back(names_[c]);
    }

    Election sub(std::move(sub_names));
    for (const Ballot& b : ballots_) {
        std::vector<int> ranked;
        for (int c : b.ranked)
            if (remap[c] >= 0) ranked.push_back(remap[c]);
        sub.add_ballot(std::move(ranked), b.multiplicity);
    }
    return sub;
}

}  // namespace fv
