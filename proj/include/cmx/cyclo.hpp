#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cmx {

using Q = mpq_class;

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1) modulo Phi_n.
// Rational values are always stored with conductor 1.
class Cyclo {
public:
    Cyclo() = default;
    Cyclo(long v) : n_(1) { if (v) c_.push_back(Q(v)); }
    Cyclo(int v) : Cyclo(long(v)) {}
    Cyclo(const Q& v) : n_(1) { if (v != 0) c_.push_back(v); }
    Cyclo(long num, long den) : Cyclo(canonical(num, den)) {}

    // zeta_n^k
    static Cyclo root(int n, long k = 1);
    // sum coeffs[i] zeta_n^i, any length; reduced mod Phi_n
    static Cyclo from_coeffs(int n, const std::vector<Q>& coeffs);

    int conductor() const { return n_; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return n_ == 1 && c_.size() == 1 && c_[0] == 1; }
    bool is_rational() const { return n_ == 1; }
    Q rational() const;  // throws if not rational
    // coefficients in the power basis of Q(zeta_m); m must be a multiple of conductor()
    std::vector<Q> coeffs_at(int m) const;

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    Cyclo& operator/=(const Cyclo& o);
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
    friend bool operator==(const Cyclo& a, const Cyclo& b);

    Cyclo inverse() const;
    Cyclo pow(long e) const;
    // zeta -> zeta^k, gcd(k, n) = 1
    Cyclo galois(long k) const;
    Cyclo conj() const { return galois(-1); }

    // total order inside Q(zeta_m), m a common multiple of both conductors
    static int compare_at(const Cyclo& a, const Cyclo& b, int m);

    std::string str() const;

    // promote to conductor m (multiple of n_); result not normalized
    void promote(int m);

private:
    static Q canonical(long num, long den) {
        Q q(num, den);
        q.canonicalize();
        return q;
    }
    int n_ = 1;
    std::vector<Q> c_;  // empty means zero; otherwise size phi(n_)
    void normalize();
    static Cyclo raw(int n, std::vector<Q> c);
};

int euler_phi(int n);
long lcm_int(long a, long b);
// integer coefficients of the n-th cyclotomic polynomial, ascending
const std::vector<long>& cyclotomic_poly(int n);

}  // namespace cmx
