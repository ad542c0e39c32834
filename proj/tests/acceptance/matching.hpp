#pragma once

#include "cmx/center.hpp"
#include "cmx/upoly.hpp"

#include <stdexcept>
#include <vector>

namespace cmx {

struct MatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One bidegree-preserving substitution of foreign generators by polynomials in ours.
struct GeneratorMatch {
    Cyclo scale;                  // coefficient of the last quadratic generator
    std::vector<MPoly> images0;   // in Z.z_ring(), parameter-free
    std::vector<MPoly> invariants;  // pi_0 of images0, in the algebra ring
};

// Foreign presentation: `ring` has the parameters first (as many as Z has) and then one
// variable per generator, with Z's bidegrees in the same order. Finds every substitution
// z_i -> P_i sending the relations at C = 0 into ker pi_0 that is invertible modulo
// decomposables, up to the torus: the Euler and first quadratic generator are fixed to ours.
std::vector<GeneratorMatch> match_generators(const Center& Z, const RingPtr& ring,
                                             const std::vector<MPoly>& relations);

// Lift of a match with a relabelling of the parameters: foreign C_k -> ours C_perm[k],
// generators -> the preimages of their truncations.
std::vector<MPoly> lift_match(const Center& Z, const GeneratorMatch& m, const std::vector<int>& perm);

// Newton interpolation through (xs[i], ys[i]).
UPoly interpolate(const std::vector<Cyclo>& xs, const std::vector<Cyclo>& ys);

}  // namespace cmx
