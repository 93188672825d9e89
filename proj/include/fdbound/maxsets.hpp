#pragma once

#include <vector>

#include "fdbound/fdg.hpp"

namespace fdbound {

// All maximal irreducible sets of one FDG, canonically ordered by
// cardinality then lexicographically on member indices.
struct MaxSetCollection {
    std::vector<VarSubset> sets;
    GraphKind graph_kind = GraphKind::Cyclic;

    bool operator==(const MaxSetCollection&) const = default;
};

// Recursive augmentation from the empty set: at each state the remainder
// B = V \ phi(A) \ An(A) \ A is either empty (A is maximal) or every
// augmentation A+{b}, b in B, stays irreducible. States are memoized on A
// and branches may fan out over `threads` workers.
MaxSetCollection all_max_sets_acyclic(const FdGraph& g, int threads = 1);

// Recursive exclusion: at each state A of excluded variables, the
// complement S = V \ A keeps phi(S) = V; S is emitted when no member is
// determined by the rest, otherwise each redundant member is excluded in
// turn. Memoized on the exclusion set.
MaxSetCollection all_max_sets_cyclic(const FdGraph& g, int threads = 1);

// Dispatches on the graph kind; Neither-kind graphs are rejected.
MaxSetCollection all_max_sets(const FdGraph& g, int threads = 1);

// Exhaustive scan of all nonempty subsets against the maximality predicate
// of the graph's kind. Testing oracle; capped at 20 variables.
MaxSetCollection brute_force_max_sets(const FdGraph& g);

// Members of c that contain no source-kind variable, order preserved.
MaxSetCollection filter_sourceless(const MaxSetCollection& c, const FdGraph& g);

// Canonical comparison: smaller cardinality first, then lexicographic on
// ascending member indices.
bool canonical_less(VarSubset a, VarSubset b);

} // namespace fdbound
