#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fv {

using Score = long long;

// Base class for all toolkit errors. Subclasses tell the CLI how to exit.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A precondition was violated or an argument is malformed.
class ContractError : public Error {
  public:
    using Error::Error;
};

// An enumeration would exceed the configured exploration caps.
class TooLargeError : public Error {
  public:
    using Error::Error;
};

// An internal consistency check failed; indicates a bug, not a user error.
class InternalError : public Error {
  public:
    using Error::Error;
};

// A group of identical voters. Each voter approves exactly the candidates in
// `ranked` (best first) and disapproves of everyone else; the relative order
// of disapproved candidates never matters.
struct Ballot {
    std::vector<int> ranked;
    Score multiplicity = 1;

    friend bool operator==(const Ballot&, const Ballot&) = default;
};

// Smallest score that is strictly more than half of `voters`.
Score majority_threshold(Score voters);

enum class Resolution {
    MajorityLevel,     // someone reached a strict majority at `level`
    ApprovalFallback,  // nobody ever did; decided by overall approvals
};

struct WinnerResult {
    std::vector<int> winners;  // candidate indices, ascending
    Resolution resolution = Resolution::ApprovalFallback;
    int level = 0;  // deciding level for MajorityLevel, otherwise 0
    Score top_score = 0;

    friend bool operator==(const WinnerResult&, const WinnerResult&) = default;
};

class Election {
  public:
    Election() = default;
    explicit Election(std::vector<std::string> candidates);

    int candidate_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& candidates() const { return names_; }
    const std::string& candidate_name(int index) const;
    int candidate_index(const std::string& name) const;  // throws ContractError
    std::optional<int> find_candidate(const std::string& name) const;

    void add_ballot(std::vector<int> ranked, Score multiplicity = 1);
    void add_ballot(const std::vector<std::string>& ranked, Score multiplicity = 1);

    const std::vector<Ballot>& ballots() const { return ballots_; }
    Score voter_count() const { return voters_; }

    // Number of voters ranking `candidate` within the first `level` positions.
    Score level_score(int candidate, int level) const;
    // Number of voters approving `candidate` at all.
    Score approval_score(int candidate) const;

    // Winner rule: scan levels 1..candidate_count(); at the first level where
    // some candidate has a strict majority, everyone with the maximum score at
    // that level wins. If no level produces a majority, the maximum overall
    // approval score decides. With no candidates there are no winners.
    WinnerResult fallback_winners() const;

    // Sub-election on `kept` candidates, original declaration order. Every
    // voter stays (the majority threshold is unchanged); rankings are filtered
    // and may become empty.
    Election restrict(const std::vector<int>& kept) const;

    friend bool operator==(const Election&, const Election&) = default;

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<Ballot> ballots_;
    Score voters_ = 0;
};

}  // namespace fv
