#include "fv/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace fv {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractError("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Election parse_election(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Election> election;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);

        if (!election) {
            std::istringstream tokens(line);
            std::string head;
            if (!(tokens >> head)) continue;  // blank line before the header
            if (head != "candidates:")
                throw ParseError("expected a 'candidates:' header", line_no);
            std::vector<std::string> names;
            std::string name;
            while (tokens >> name) {
                if (name.find('|') != std::string::npos)
                    throw ParseError("candidate name contains '|'", line_no);
                names.push_back(std::move(name));
            }
            if (names.empty()) throw ParseError("no candidates declared", line_no);
            try {
                election.emplace(std::move(names));
            } catch (const ContractError& err) {
                throw ParseError(err.what(), line_no);
            }
            continue;
        }

        const size_t bar = line.find('|');
        std::istringstream tokens(
            bar == std::string::npos ? line : line.substr(0, bar));
        std::vector<std::string> parts;
        std::string token;
        while (tokens >> token) parts.push_back(std::move(token));
        if (bar == std::string::npos) {
            if (parts.empty()) continue;  // blank line
            throw ParseError("ballot line missing '|'", line_no);
        }

        Score multiplicity = 1;
        size_t first = 0;
        if (parts.size() >= 2 && parts[1] == "*") {
            try {
                size_t used = 0;
                multiplicity = std::stoll(parts[0], &used);
                if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
            } catch (const std::exception&) {
                throw ParseError("invalid ballot multiplicity '" + parts[0] + "'", line_no);
            }
            if (multiplicity < 1)
                throw ParseError("ballot multiplicity must be positive", line_no);
            first = 2;
        }
        const std::vector<std::string> ranked(parts.begin() + first, parts.end());
        try {
            election->add_ballot(ranked, multiplicity);
        } catch (const ContractError& err) {
            throw ParseError(err.what(), line_no);
        }
    }
    if (!election) throw ParseError("no 'candidates:' header found", line_no);
    return *std::move(election);
}

Election parse_election_file(const std::string& path) {
    return parse_election(read_text_file(path));
}

std::string serialize_election(const Election& e) {
    std::string out = "candidates:";
    for (const std::string& name : e.candidates()) {
        out += ' ';
        out += name;
    }
    out += '\n';
    std::vector<char> approved(e.candidate_count(), 0);
    for (const Ballot& b : e.ballots()) {
        out += std::to_string(b.multiplicity) + " *";
        for (int c : b.ranked) {
            out += ' ';
            out += e.candidate_name(c);
        }
        out += " |";
        // The disapproved remainder is implicit; regenerate it for readers.
        std::fill(approved.begin(), approved.end(), 0);
        for (int c : b.ranked) approved[c] = 1;
        for (int c = 0; c < e.candidate_count(); ++c) {
            if (approved[c]) continue;
            out += ' ';
            out += e.candidate_name(c);
        }
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const std::exception& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what(), 0);
    }
}

std::vector<std::vector<int>> sets_from_json(const nlohmann::json& value) {
    std::vector<std::vector<int>> sets;
    for (const auto& entry : value) {
        std::vector<int> set;
        for (const auto& element : entry) set.push_back(element.get<int>() - 1);
        std::sort(set.begin(), set.end());
        sets.push_back(std::move(set));
    }
    return sets;
}

}  // namespace

HittingSetInstance parse_hitting_set(const std::string& json_text) {
    const nlohmann::json j = parse_json(json_text);
    HittingSetInstance hs;
    try {
        hs.universe_size = j.at("m").get<int>();
        hs.bound = j.at("k").get<int>();
        hs.sets = sets_from_json(j.at("sets"));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed hitting-set JSON: ") + ex.what(), 0);
    }
    validate_hitting_set(hs);
    return hs;
}

X3CInstance parse_x3c(const std::string& json_text) {
    const nlohmann::json j = parse_json(json_text);
    X3CInstance x3c;
    try {
        x3c.m = j.at("m").get<int>();
        x3c.sets = sets_from_json(j.at("sets"));
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("malformed exact-cover JSON: ") + ex.what(), 0);
    }
    validate_x3c(x3c);
    return x3c;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t hash = 14695981039346656037ull;
    for (unsigned char ch : data) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string digest_hex(const std::string& data) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return std::string("fnv1a:") + hex;
}

}  // namespace fv
