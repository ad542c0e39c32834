#include "cmx/modp.hpp"

#include <stdexcept>

namespace cmx {

namespace {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

PrimeField::PrimeField(int n, uint64_t start) : n_(n) {
    uint64_t p = start - start % n + 1;
    if (p < start) p += n;
    while (!is_prime(p)) p += n;
    p_ = p;
    std::vector<uint64_t> primes;
    uint64_t m = uint64_t(n);
    for (uint64_t d = 2; d <= m; ++d)
        if (m % d == 0) {
            primes.push_back(d);
            while (m % d == 0) m /= d;
        }
    for (uint64_t g = 2;; ++g) {
        uint64_t z = pow(g, (p_ - 1) / n);
        bool prim = true;
        for (auto q : primes)
            if (pow(z, n / q) == 1) prim = false;
        if (prim) {
            zeta_ = z;
            break;
        }
    }
}

uint64_t PrimeField::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t PrimeField::map(const Q& q) const {
    mpz_class num = q.get_num() % mpz_class(p_);
    if (num < 0) num += p_;
    mpz_class den = q.get_den() % mpz_class(p_);
    if (den == 0) throw std::domain_error("modular image: denominator divisible by p");
    return mul(num.get_ui(), inv(den.get_ui()));
}

uint64_t PrimeField::map(const Cyclo& c) const {
    if (c.is_zero()) return 0;
    if (n_ % c.conductor() != 0) throw std::invalid_argument("modular image: conductor mismatch");
    auto co = c.coeffs_at(c.conductor());
    uint64_t z = pow(zeta_, n_ / c.conductor()), zk = 1, r = 0;
    for (auto& q : co) {
        if (q != 0) r = add(r, mul(map(q), zk));
        zk = mul(zk, z);
    }
    return r;
}

void ModEchelon::reduce(std::vector<uint64_t>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
        uint64_t a = v[pivots_[i]];
        if (!a) continue;
        const auto& r = rows_[i];
        for (size_t j = pivots_[i]; j < len_; ++j)
            if (r[j]) v[j] = f_.sub(v[j], f_.mul(a, r[j]));
    }
}

bool ModEchelon::add(std::vector<uint64_t> v) {
    if (v.size() != len_) throw std::invalid_argument("ModEchelon: length mismatch");
    reduce(v);
    size_t piv = 0;
    while (piv < len_ && !v[piv]) ++piv;
    if (piv == len_) return false;
    uint64_t s = f_.inv(v[piv]);
    for (auto& x : v) x = f_.mul(x, s);
    // keep earlier rows reduced at the new pivot so reduce() stays a single pass
    for (auto& r : rows_)
        if (uint64_t a = r[piv])
            for (size_t j = piv; j < len_; ++j)
                if (v[j]) r[j] = f_.sub(r[j], f_.mul(a, v[j]));
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool ModEchelon::in_span(std::vector<uint64_t> v) const {
    reduce(v);
    for (auto x : v)
        if (x) return false;
    return true;
}

size_t mod_rank(const PrimeField& f, std::vector<std::vector<uint64_t>> rows) {
    if (rows.empty()) return 0;
    ModEchelon e(f, rows[0].size());
    for (auto& r : rows) e.add(std::move(r));
    return e.rank();
}

}  // namespace cmx
