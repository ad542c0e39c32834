#pragma once

#include "cmx/limits.hpp"
#include "cmx/mpoly.hpp"

#include <vector>

namespace cmx {

// Monomial orders on the first nvars variables of a ring.
struct MonomialOrder {
    enum class Kind { Lex, Grevlex, Block };
    Kind kind = Kind::Grevlex;
    int nvars = 0;
    std::vector<int> weights;  // degree weights, default 1
    std::vector<int> blocks;   // block sizes (Block); each block is weighted grevlex

    static MonomialOrder lex(int n);
    static MonomialOrder grevlex(int n, std::vector<int> weights = {});
    static MonomialOrder block(std::vector<int> sizes, std::vector<int> weights = {});
    // >0 if a > b, <0 if a < b
    int compare(const Mono& a, const Mono& b) const;
    int weighted_degree(const Mono& m) const;
};

// Reduced Groebner basis (monic, sorted by leading monomial).
std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens, const MonomialOrder& ord,
                                  const Budget& budget = Budget());
// Full normal form modulo a Groebner basis.
MPoly normal_form(const MPoly& f, const std::vector<MPoly>& gb, const MonomialOrder& ord);
Mono leading_monomial(const MPoly& f, const MonomialOrder& ord);
Cyclo leading_coeff(const MPoly& f, const MonomialOrder& ord);
// elements of a Groebner basis for a block order that avoid the first `eliminated` variables
std::vector<MPoly> eliminate(const std::vector<MPoly>& gb, int eliminated);

// Minimal generators of the kernel of z_i -> images[i], as polynomials in z_ring
// (one variable per image). Images should be homogeneous; each z_i gets the
// degree of its image so that the elimination ideal is graded.
std::vector<MPoly> algebra_map_kernel(const std::vector<MPoly>& images, const RingPtr& z_ring,
                                      const Budget& budget = Budget());
// Drop generators lying in the ideal of the earlier ones (processed by weighted degree).
std::vector<MPoly> minimal_generators(std::vector<MPoly> gens, const MonomialOrder& ord,
                                      const Budget& budget = Budget());

}  // namespace cmx
