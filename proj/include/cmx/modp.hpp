#pragma once

#include "cmx/mpoly.hpp"

#include <cstdint>
#include <vector>

namespace cmx {

// Prime field F_p with a chosen primitive n-th root of unity standing in for zeta_n.
class PrimeField {
public:
    // smallest prime p >= start with p = 1 mod n
    explicit PrimeField(int n, uint64_t start = (uint64_t(1) << 31));
    uint64_t p() const { return p_; }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p_; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p_ - b) % p_; }
    uint64_t mul(uint64_t a, uint64_t b) const { return uint64_t((unsigned __int128)a * b % p_); }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const { return pow(a, p_ - 2); }
    // image of a cyclotomic number whose conductor divides n; throws if a denominator vanishes
    uint64_t map(const Cyclo& c) const;
    uint64_t map(const Q& q) const;

private:
    uint64_t p_ = 0;
    int n_ = 1;
    uint64_t zeta_ = 1;
};

// Incremental row echelon form over F_p on vectors of a fixed length.
class ModEchelon {
public:
    ModEchelon(const PrimeField& f, size_t len) : f_(f), len_(len) {}
    // true if v is independent of the rows added so far (then it is kept)
    bool add(std::vector<uint64_t> v);
    bool in_span(std::vector<uint64_t> v) const;
    size_t rank() const { return rows_.size(); }

private:
    const PrimeField& f_;
    size_t len_;
    std::vector<std::vector<uint64_t>> rows_;
    std::vector<size_t> pivots_;
    void reduce(std::vector<uint64_t>& v) const;
};

// rank over F_p of a dense matrix
size_t mod_rank(const PrimeField& f, std::vector<std::vector<uint64_t>> rows);

}  // namespace cmx
