#pragma once

#include "cmx/cherednik.hpp"
#include "cmx/modp.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace cmx {

using Bideg = std::pair<int, int>;

// dimensions of the bigraded invariant spaces C[V x V*]^W_(a,b) for a + b <= bound
std::map<Bideg, long> molien_series(const ReflectionGroup& g, int bound);

struct InvariantSystem {
    std::vector<MPoly> gens;         // in the algebra ring, x and y only
    std::vector<Bideg> bidegrees;
    std::map<Bideg, long> molien;
    int degree_bound = 0;
};

struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Minimal bihomogeneous generators of C[V x V*]^W, complete through total degree
// `degree_bound` (0 means |W|).
InvariantSystem fundamental_invariants(const AlgPtr& a, int degree_bound = 0, const Budget& budget = Budget());

struct CenterOptions {
    int degree_bound = 0;
    uint64_t seed = 0;
    bool parallel = true;
    Budget budget;
};

struct CenterPresentation {
    std::vector<PBW> gens;
    std::vector<Bideg> gen_bidegrees;
    std::vector<MPoly> relations;    // in z_ring
    std::vector<MPoly> relations0;   // the same at C = 0
    std::vector<Bideg> rel_bidegrees;
};

// Center Z of the generic algebra, presented over C[C] by the generators z_i.
class Center {
public:
    explicit Center(AlgPtr a, CenterOptions opt = CenterOptions());
    Center(AlgPtr a, InvariantSystem inv, CenterOptions opt = CenterOptions());

    const AlgPtr& algebra() const { return a_; }
    const InvariantSystem& invariants() const { return inv_; }
    const std::vector<PBW>& generators() const { return gens_; }
    int num_generators() const { return int(gens_.size()); }
    Bideg bidegree(int i) const { return inv_.bidegrees[i]; }
    int z_degree(int i) const { return inv_.bidegrees[i].first - inv_.bidegrees[i].second; }
    // variables C1..Cr, z1..zm
    const RingPtr& z_ring() const { return zring_; }
    int z_var(int i) const { return a_->num_c() + i; }
    MPoly z(int i) const { return MPoly::var(zring_, z_var(i)); }

    // evaluate a polynomial in C and z inside H
    PBW pi(const MPoly& F) const;
    // F with pi(F) = z for central bihomogeneous z
    MPoly preimage(const PBW& z) const;
    // the unique F (up to the relations) with trunc(pi(F)) = f, f invariant in C, x, y
    MPoly preimage_trunc(const MPoly& f) const;
    // u central with trunc(u) in C_0: u = sum_s C_s h_s
    std::map<int, PBW> split_C0_multiple(const PBW& u) const;
    // polynomial in z (C-free) with pi_0 = f, f invariant in x, y only
    MPoly preimage0(const MPoly& f) const;

    // generators of the kernel of pi_0: C[z] -> C[V x V*]^W
    std::vector<MPoly> kernel0() const;
    CenterPresentation presentation() const;
    // dimensions of C[z]/<relations> per bidegree through a total degree, relations C-free
    std::map<Bideg, long> hilbert_function(const std::vector<MPoly>& relations0, int bound) const;

    PBW poisson_bracket(const PBW& a, const PBW& b) const;
    // {z_i, z_j} as polynomials in C and z
    std::vector<std::vector<MPoly>> poisson_matrix() const;

    // z-monomials of a bidegree (exponents on the z variables of z_ring)
    std::vector<Mono> z_monomials(Bideg b) const;

private:
    AlgPtr a_;
    CenterOptions opt_;
    InvariantSystem inv_;
    std::vector<PBW> gens_;
    RingPtr zring_;

    struct Solver {
        std::vector<Mono> cols;   // z-monomials forming a basis of the invariants
        std::vector<Mono> rows;   // x,y monomials selecting an invertible square block
        Mat inverse;
    };
    mutable std::mutex mu_;
    mutable std::map<Bideg, std::shared_ptr<const Solver>> solvers_;
    mutable std::map<Mono, MPoly> prod0_;   // pi_0 of z-monomials
    mutable std::map<Mono, PBW> prod_;      // pi of z-monomials

    void build_generators();
    MPoly expand0(const Mono& m) const;
    PBW expand(const Mono& m) const;
    std::shared_ptr<const Solver> solver(Bideg b) const;
};

}  // namespace cmx
