#pragma once

#include <filesystem>
#include <iosfwd>

#include "wncs/mdp.hpp"

namespace wncs {

/// CSV with header `state,delta,upsilon,action`, one row per state, action in 1..3.
void write_policy_table(std::ostream& out, const DeterministicPolicy& policy);
void write_policy_table(const std::filesystem::path& path, const DeterministicPolicy& policy);

/// Throws CorruptPolicyError on malformed rows, gaps or duplicates.
DeterministicPolicy read_policy_table(std::istream& in);
DeterministicPolicy read_policy_table(const std::filesystem::path& path);

}  // namespace wncs
