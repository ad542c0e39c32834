#pragma once

#include "cmx/limits.hpp"
#include "cmx/reflection.hpp"

#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmx {

enum class TMode { Zero, Generic };

struct MonoKeyHash {
    size_t operator()(const std::pair<int, Mono>& k) const noexcept { return MonoHash()(k.second) * 31 + size_t(k.first); }
};

// Thread-safe memo table keyed by (index, monomial).
class MonoMemo {
public:
    bool find(int i, const Mono& m, MPoly& out) const;
    void insert(int i, const Mono& m, const MPoly& v);
    size_t size() const;

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<std::pair<int, Mono>, MPoly, MonoKeyHash> map_;
};

// Polynomial ring C1..Cr, x1..xn, y1..yn, t over a group, with the group action.
class Algebra {
public:
    explicit Algebra(GroupPtr g);
    // same algebra with C_k replaced by values[k] (polynomials in the C variables) in the relations
    Algebra(GroupPtr g, std::vector<MPoly> values);
    const ReflectionGroup& group() const { return *g_; }
    const GroupPtr& group_ptr() const { return g_; }
    const RingPtr& ring() const { return ring_; }
    int rank() const { return g_->dim(); }
    int num_c() const { return g_->num_c(); }
    int c_var(int k) const { return k; }
    int x_var(int i) const { return num_c() + i; }
    int y_var(int j) const { return num_c() + rank() + j; }
    int t_var() const { return num_c() + 2 * rank(); }
    MPoly c(int k) const { return MPoly::var(ring_, c_var(k)); }
    bool is_specialized() const { return !c_value_.empty(); }
    // the value of C_k used in the relations
    MPoly c_value(int k) const { return c_value_.empty() ? c(k) : c_value_[k]; }
    MPoly x(int i) const { return MPoly::var(ring_, x_var(i)); }
    MPoly y(int j) const { return MPoly::var(ring_, y_var(j)); }
    MPoly t() const { return MPoly::var(ring_, t_var()); }
    MPoly constant(const Cyclo& c) const { return MPoly(ring_, c); }
    MPoly zero() const { return MPoly(ring_); }
    const std::vector<bool>& x_mask() const { return x_mask_; }
    const std::vector<bool>& y_mask() const { return y_mask_; }
    const std::vector<bool>& xy_mask() const { return xy_mask_; }
    const std::vector<bool>& c_mask() const { return c_mask_; }

    // action of group element w on C[C x V x V* x t]
    MPoly act(int w, const MPoly& f) const;
    // (Delta_s (x) s)(f) for the reflection with index r
    MPoly delta(int r, const MPoly& f) const;
    bool is_invariant(const MPoly& f) const;
    // linear form sum v_j y_j
    MPoly y_form(const std::vector<Cyclo>& v) const;
    // x and y degree of the x,y part (ignoring C and t)
    std::pair<int, int> xy_degree(const Mono& m) const;

private:
    GroupPtr g_;
    RingPtr ring_;
    std::vector<bool> x_mask_, y_mask_, xy_mask_, c_mask_;
    std::vector<std::vector<MPoly>> img_;  // [w][var] image of x_i, y_j
    std::vector<MPoly> c_value_;
    mutable MonoMemo act_memo_, delta_memo_;
    MPoly act_mono(int w, const Mono& m) const;
    MPoly delta_mono(int r, const Mono& m) const;
};

using AlgPtr = std::shared_ptr<const Algebra>;
AlgPtr make_algebra(GroupPtr g);
AlgPtr make_specialized_algebra(const AlgPtr& a, const std::vector<MPoly>& values);

// Element sum_w h_w w of the generic Cherednik algebra; h_w is normal ordered
// (x left of y), group element on the right.
class PBW {
public:
    PBW() = default;
    explicit PBW(AlgPtr a);
    static PBW from_poly(AlgPtr a, const MPoly& f);
    static PBW group_element(AlgPtr a, int w);

    const AlgPtr& algebra() const { return a_; }
    const MPoly& coeff(int w) const { return c_[w]; }
    MPoly& coeff(int w) { return c_[w]; }
    int support_size() const;
    bool is_zero() const;
    size_t num_terms() const;

    PBW& operator+=(const PBW& o);
    PBW& operator-=(const PBW& o);
    friend PBW operator+(PBW a, const PBW& b) { return a += b; }
    friend PBW operator-(PBW a, const PBW& b) { return a -= b; }
    PBW operator-() const;
    // left multiplication by a polynomial in C, x, t
    PBW scale(const MPoly& f) const;
    friend bool operator==(const PBW& a, const PBW& b) { return a.c_ == b.c_; }

    // y_j * this
    PBW left_mul_y(int j, TMode mode) const;
    // w * this
    PBW left_mul_group(int w) const;

    std::vector<std::pair<int, int>> bidegrees() const;
    MPoly trunc() const { return c_[0]; }
    std::string str() const;

private:
    AlgPtr a_;
    std::vector<MPoly> c_;
};

PBW mul(const PBW& a, const PBW& b, TMode mode = TMode::Zero, const Budget& budget = Budget());
PBW commutator(const PBW& a, const PBW& b, TMode mode, const Budget& budget = Budget());
PBW euler(const AlgPtr& a);
bool is_central(const PBW& z, TMode mode = TMode::Zero);

// unique central z with trunc(z) = f and z_w in C_0 for w != 1
struct TruncOptions {
    uint64_t seed = 0;
    bool parallel = true;
    Budget budget;
};
PBW trunc_inverse(const AlgPtr& a, const MPoly& f, const TruncOptions& opt = TruncOptions());
PBW trunc_inverse_serial(const AlgPtr& a, const MPoly& f, const TruncOptions& opt = TruncOptions());

// substitute parameter variables C_k -> images[k]; the result lives in the specialized algebra
PBW specialize(const PBW& z, const std::vector<MPoly>& images);
PBW specialize(const PBW& z, const AlgPtr& target);
MPoly specialize(const Algebra& a, const MPoly& f, const std::vector<MPoly>& images);

// move a polynomial between the algebra ring and rings sharing variable names
MPoly to_algebra(const Algebra& a, const MPoly& f);

}  // namespace cmx
