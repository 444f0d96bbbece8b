#pragma once

#include <cstdint>
#include <optional>

#include "robmatch/profile.hpp"

namespace robmatch {

/// U = a_0..a_{n-1}, x_1..x_n; W = b_0..b_{n-1}, y_1..y_n (indices in that
/// order). The unique stable matching costs n^2-1; one swap in b_0's list
/// admits a matching of cost n+1.
Profile gen_example2(int n);
/// a1: b1; a2: b1 b2; b1: a2 a1; b2: a2.
Profile gen_example3();
/// u_i ranks w_{i+k mod n} at k and w_j ranks u_{j+k mod n} at k.
Profile gen_cyclic_latin(int n);
/// Each pair acceptable with probability `density`; lists shuffled.
Profile gen_random(int nU, int nW, double density, std::uint64_t seed);

/// Complete 4x4 profile with five stable matchings, rotations
/// pi1=((u1,w2),(u2,w3),(u3,w4),(u4,w1)), pi2=((u1,w3),(u3,w1)),
/// pi3=((u2,w4),(u4,w2)) and the diagonal as its only 1-robust matching.
/// Found by search; absent if no candidate passes every check.
std::optional<Profile> gen_example1_fixture();

}  // namespace robmatch
