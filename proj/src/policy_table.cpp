#include "wncs/policy_table.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wncs/errors.hpp"

namespace wncs {

void write_policy_table(std::ostream& out, const DeterministicPolicy& policy) {
    const auto& space = policy.space();
    out << "state,delta,upsilon,action\n";
    for (int s = 0; s < space.size(); ++s) {
        const auto [d, u] = space.state(s);
        out << s << ',' << d << ',' << u << ',' << static_cast<int>(policy.at_index(s)) << '\n';
    }
}

void write_policy_table(const std::filesystem::path& path, const DeterministicPolicy& policy) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    write_policy_table(out, policy);
}

namespace {

int parse_int(const std::string& field, int line) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw CorruptPolicyError("line " + std::to_string(line) + ": '" + field + "' is not an integer");
    }
}

}  // namespace

DeterministicPolicy read_policy_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw CorruptPolicyError("policy table is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "state,delta,upsilon,action") throw CorruptPolicyError("unexpected header: " + line);

    std::map<std::pair<int, int>, int> rows;
    int max_delta = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 4) throw CorruptPolicyError("line " + std::to_string(lineno) + ": expected 4 fields");
        const int state = parse_int(fields[0], lineno);
        const int delta = parse_int(fields[1], lineno);
        const int upsilon = parse_int(fields[2], lineno);
        const int action = parse_int(fields[3], lineno);
        if (delta < 1 || upsilon < 1 || upsilon > 4)
            throw CorruptPolicyError("line " + std::to_string(lineno) + ": state out of range");
        if (action < 1 || action > kNumActions)
            throw CorruptPolicyError("line " + std::to_string(lineno) + ": action must be 1, 2 or 3");
        if (state != (delta - 1) * 4 + (upsilon - 1))
            throw CorruptPolicyError("line " + std::to_string(lineno) + ": state index disagrees with (delta, upsilon)");
        if (!rows.emplace(std::pair{delta, upsilon}, action).second)
            throw CorruptPolicyError("line " + std::to_string(lineno) + ": duplicate state");
        max_delta = std::max(max_delta, delta);
    }
    if (max_delta == 0) throw CorruptPolicyError("policy table has no rows");
    const StateSpace space(max_delta);
    if (static_cast<int>(rows.size()) != space.size())
        throw CorruptPolicyError("policy table does not cover every state up to delta " + std::to_string(max_delta));
    std::vector<Action> actions(static_cast<std::size_t>(space.size()));
    for (const auto& [key, action] : rows)
        actions[static_cast<std::size_t>(space.index(key.first, key.second))] = action_from_number(action);
    return {space, std::move(actions)};
}

DeterministicPolicy read_policy_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CorruptPolicyError("cannot open " + path.string());
    return read_policy_table(in);
}

}  // namespace wncs
