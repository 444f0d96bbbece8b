#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "robmatch/profile.hpp"
#include "robmatch/rotations.hpp"

namespace robmatch {

/// Line-oriented text format:
///   profile v1
///   side U: <names>
///   side W: <names>
///   <name>: <most preferred> ... <least preferred>
/// Lines starting with '#' and blank lines are skipped. Errors carry the
/// offending line number.
Profile parse_profile(std::string_view text, AcceptabilityPolicy policy = AcceptabilityPolicy::Reject);
std::string serialize_profile(const Profile& p);

/// One "u w" pair per line.
Matching parse_matching(std::string_view text, const Profile& p);
std::string serialize_matching(const Profile& p, const Matching& m);

std::string rotation_label(const Profile& p, const Rotation& r);
std::string rotations_dot(const Profile& p, const RotationDigraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace robmatch
