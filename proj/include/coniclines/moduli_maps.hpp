#pragma once

#include "coniclines/reconstruction.hpp"
#include "coniclines/stable_trees.hpp"
#include "coniclines/stability.hpp"

namespace coniclines {

// A binary form considered up to Moebius transformations of the line.
struct BinaryFormClass {
    BinaryForm form;
    Weight degree() const { return form.degree(); }
};

// Contracts everything away from the central vertex: legs there keep their
// coordinates, each hanging branch collapses to its edge coordinate with the
// branch leg total as multiplicity. Without a central vertex the result is
// the canonical strictly semistable class {0, infinity} with multiplicity
// g+1 each.
BinaryFormClass f_map(const PointedTree& t, int g);

// Inverts psi on the representative and reads the marking parameters off a
// normalization of the conic to y^2 = xz. Throws NotInV away from the domain
// of the reconstruction.
BinaryFormClass alpha(const LineConfig& r, int g);

// psi of the embedded contraction of a deterministically chosen principal
// part: single-vertex parts are preferred (smallest vertex id), otherwise
// the lexicographically first admissible pair. The seed only steers the
// internal principality tests, never the returned configuration.
LineConfig beta(const PointedTree& t, int g, std::uint64_t seed = 0);

// Decides projective equivalence of the weighted root sets by normalizing
// all weight-compatible ordered triples to (0, 1, infinity). Forms with at
// most two distinct roots are compared by multiplicity profile.
bool mobius_equivalent(const BinaryForm& b1, const BinaryForm& b2);

// Representative-level factorization: alpha(beta(t)) must agree with
// f_map(t) up to a Moebius transformation.
bool factorization_check(const PointedTree& t, int g);

} // namespace coniclines
