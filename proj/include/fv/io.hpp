#pragma once

#include <cstdint>
#include <string>

#include "fv/election.hpp"
#include "fv/reductions.hpp"

namespace fv {

// Input text could not be understood. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, int line)
        : Error(line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

std::string read_text_file(const std::string& path);

// Election text format:
//   # comment, anywhere in a line
//   candidates: a b c d
//   3 * a c |
//   b d c |
// The first content line declares the candidate names. Every further content
// line is one ballot group: an optional "<count> *" prefix, the approved
// candidates best first, and a mandatory '|'. Anything after the '|' is
// ignored. Names may not contain whitespace, '#' or '|'; a bare name in the
// second position must not be "*".
Election parse_election(const std::string& text);
Election parse_election_file(const std::string& path);
std::string serialize_election(const Election& e);

// JSON sources for the instance builders. Elements are 1-based on disk:
//   {"m": 3, "k": 1, "sets": [[1, 2], [2, 3]]}   hitting set
//   {"m": 2, "sets": [[1, 2, 3], [4, 5, 6]]}     exact cover by three-sets
HittingSetInstance parse_hitting_set(const std::string& json_text);
X3CInstance parse_x3c(const std::string& json_text);

uint64_t fnv1a64(const std::string& data);
// "fnv1a:" followed by the 16-digit lowercase hex of fnv1a64(data).
std::string digest_hex(const std::string& data);

}  // namespace fv
