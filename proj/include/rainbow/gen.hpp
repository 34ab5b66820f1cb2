#pragma once

#include <cstdint>

#include "rainbow/alternating.hpp"
#include "rainbow/core.hpp"
#include "rainbow/monopath.hpp"

namespace rainbow {

// All generators are pure functions of their arguments: the same seed yields
// a byte-identical instance (serialization included) on every platform.

// n pairwise disjoint perfect matchings of K_{n,n} from a Latin square: rows
// become matchings, cell (i,j)=s becomes the edge {j, n+s}. For n <= 4 the
// square is drawn uniformly from the full enumeration; for larger n, from
// seeded row/column/symbol shuffles of the cyclic square. Declared bipartite.
MatchingFamily gen_latin(int n, std::uint64_t seed);

// Random family of n size-n matchings, uniformity r.
//   general:            each matching chops a shuffled pool of r*n + ceil(n/2)
//                       vertices into n edges
//   bipartite:          r=2; random pairings between two sides of
//                       n + ceil(n/4) vertices each
//   pairwise_disjoint:  color classes of a greedy proper edge coloring of a
//                       random graph on 2*n*r vertices; retries with a denser
//                       graph until n classes of size >= n exist, then
//                       truncates (GenError after the retry limit)
MatchingFamily gen_random(int n, int r, InstanceClass kind, std::uint64_t seed);

enum class SharpnessVariant { st_single, ss_double };

// Tight families for the monotone-path guarantees.
//   st_single: S={s}, T={t}, Y={y_1..y_m}; m copies of s->y_1->..->y_m->t.
//              No rainbow-monotone S-T path exists; adding an (m+1)-th copy
//              creates one.
//   ss_double: S={u,v}, Y={y_1..y_m}; m copies of u->y_1->..->y_m->v followed
//              by m copies of the reverse traversal v->y_m->..->y_1->u.
//              2m paths, no rainbow-monotone S-S path; one more path meets
//              the 2|Y|+1 guarantee.
PathInstance gen_sharpness_paths(int m, SharpnessVariant variant);

// Random S-S instance: s_count sources, y_count interior vertices, m paths
// with seeded endpoints and interiors.
PathInstance gen_random_path_instance(int s_count, int y_count, int m,
                                      std::uint64_t seed);

// Random matching M of size in [1, m_size_max] plus augmenting-path sets
// harvested from symmetric differences with random larger matchings; keeps
// adding sets until the total path count exceeds 2|M|.
AlternatingSystem gen_random_alternating_system(int m_size_max, std::uint64_t seed);

}  // namespace rainbow
