#pragma once

#include <string>
#include <vector>

#include "fv/election.hpp"

namespace testsupport {

// Six voters over {a,b,c,d}: a reaches a majority at level 2, yet dropping b
// hands the win to c. Used across the winner, control, and CLI suites.
inline fv::Election example_one() {
    fv::Election e(std::vector<std::string>{"a", "b", "c", "d"});
    e.add_ballot(std::vector<std::string>{"a", "c"}, 3);
    e.add_ballot(std::vector<std::string>{"b", "d", "c"}, 2);
    e.add_ballot(std::vector<std::string>{"d", "a", "c"}, 1);
    return e;
}

// Four voters over {a,b,c,d}: a wins outright, but splitting the electorate
// into {v1,v2} and {v3,v4} leaves a out of the final round.
inline fv::Election example_two() {
    fv::Election e(std::vector<std::string>{"a", "b", "c", "d"});
    e.add_ballot(std::vector<std::string>{"a", "c"});
    e.add_ballot(std::vector<std::string>{"d", "c"});
    e.add_ballot(std::vector<std::string>{"b", "a", "c"});
    e.add_ballot(std::vector<std::string>{"b", "a"});
    return e;
}

}  // namespace testsupport
