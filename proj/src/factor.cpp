#include "cmx/upoly.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cmx {

namespace {

using u64 = uint64_t;
using ZPoly = std::vector<mpz_class>;

// ---------------------------------------------------------------- mod p
struct ModP {
    u64 p;
    u64 mul(u64 a, u64 b) const { return (unsigned __int128)a * b % p; }
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 pw(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pw(a, p - 2); }
};

using PP = std::vector<u64>;

void ptrim(PP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PP pmul(const ModP& F, const PP& a, const PP& b) {
    if (a.empty() || b.empty()) return {};
    PP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    ptrim(r);
    return r;
}

PP psub(const ModP& F, const PP& a, const PP& b) {
    PP r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    ptrim(r);
    return r;
}

std::pair<PP, PP> pdivmod(const ModP& F, PP a, const PP& b) {
    ptrim(a);
    if (a.size() < b.size()) return {{}, a};
    PP q(a.size() - b.size() + 1, 0);
    u64 inv = F.inv(b.back());
    for (int i = int(a.size()) - int(b.size()); i >= 0; --i) {
        u64 c = F.mul(a[i + b.size() - 1], inv);
        q[i] = c;
        if (!c) continue;
        for (size_t j = 0; j < b.size(); ++j) a[i + j] = F.sub(a[i + j], F.mul(c, b[j]));
    }
    a.resize(b.size() - 1);
    ptrim(a);
    ptrim(q);
    return {q, a};
}

PP pmonic(const ModP& F, PP a) {
    if (a.empty()) return a;
    u64 inv = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, inv);
    return a;
}

PP pgcd(const ModP& F, PP a, PP b) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PP r = pdivmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return pmonic(F, a);
}

// s*a + t*b = 1 for coprime a, b
void pbezout(const ModP& F, const PP& a, const PP& b, PP& s, PP& t) {
    PP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = pdivmod(F, r0, r1);
        PP s2 = psub(F, s0, pmul(F, q, s1));
        PP t2 = psub(F, t0, pmul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) throw std::logic_error("bezout: not coprime");
    u64 inv = F.inv(r0[0]);
    for (auto& x : s0) x = F.mul(x, inv);
    for (auto& x : t0) x = F.mul(x, inv);
    s = s0;
    t = t0;
}

PP ppowmod(const ModP& F, PP base, const mpz_class& e, const PP& m) {
    PP r{1};
    base = pdivmod(F, base, m).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = pdivmod(F, pmul(F, r, r), m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = pdivmod(F, pmul(F, r, base), m).second;
    }
    return r;
}

PP pderiv(const ModP& F, const PP& a) {
    PP r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(a[i], i % F.p));
    ptrim(r);
    return r;
}

// monic squarefree f mod p -> monic irreducible factors
std::vector<PP> factor_mod_p(const ModP& F, const PP& f0, std::mt19937_64& rng) {
    std::vector<PP> out;
    PP f = pmonic(F, f0);
    // distinct degree
    std::vector<std::pair<PP, int>> dd;
    PP h{0, 1};
    PP x{0, 1};
    for (int d = 1; 2 * d <= int(f.size()) - 1; ++d) {
        h = ppowmod(F, h, mpz_class(F.p), f);
        PP g = pgcd(F, psub(F, h, x), f);
        if (g.size() > 1) {
            dd.push_back({g, d});
            f = pdivmod(F, f, g).first;
            h = pdivmod(F, h, f).second;
        }
    }
    if (f.size() > 1) dd.push_back({pmonic(F, f), int(f.size()) - 1});
    // equal degree splitting
    for (auto& [g, d] : dd) {
        std::vector<PP> stack{g};
        while (!stack.empty()) {
            PP u = stack.back();
            stack.pop_back();
            int du = int(u.size()) - 1;
            if (du == d) {
                out.push_back(u);
                continue;
            }
            mpz_class e;
            mpz_ui_pow_ui(e.get_mpz_t(), F.p, d);
            e = (e - 1) / 2;
            for (;;) {
                PP a(du);
                for (auto& c : a) c = rng() % F.p;
                ptrim(a);
                if (a.size() < 2) continue;
                PP b = ppowmod(F, a, e, u);
                if (b.empty()) b = {0};
                b[0] = F.sub(b[0], 1);
                ptrim(b);
                PP g2 = pgcd(F, b, u);
                if (g2.size() > 1 && g2.size() < u.size()) {
                    stack.push_back(g2);
                    stack.push_back(pdivmod(F, u, g2).first);
                    break;
                }
            }
        }
    }
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---------------------------------------------------------------- over Z
mpz_class zcontent(const ZPoly& f) {
    mpz_class g = 0;
    for (auto& c : f) g = gcd(g, c);
    return g;
}

ZPoly zprimitive(ZPoly f) {
    mpz_class g = zcontent(f);
    if (g == 0) return f;
    if (f.back() < 0) g = -g;
    for (auto& c : f) c /= g;
    return f;
}

mpz_class smod(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

ZPoly zmul_mod(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& c : r) {
        c %= m;
        if (c < 0) c += m;
    }
    return r;
}

// exact division over Z; returns false if not divisible
bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    ZPoly r = a;
    if (r.size() < b.size()) return false;
    q.assign(r.size() - b.size() + 1, 0);
    for (int i = int(r.size()) - int(b.size()); i >= 0; --i) {
        mpz_class num = r[i + b.size() - 1];
        if (num % b.back() != 0) return false;
        mpz_class c = num / b.back();
        q[i] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
    }
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (r[i] != 0) return false;
    return true;
}

PP reduce_mod(const ZPoly& f, u64 p) {
    PP r(f.size());
    mpz_class pm(static_cast<unsigned long>(p));
    for (size_t i = 0; i < f.size(); ++i) {
        mpz_class c = f[i] % pm;
        if (c < 0) c += pm;
        r[i] = c.get_ui();
    }
    ptrim(r);
    return r;
}

ZPoly lift_pp(const PP& a) {
    ZPoly r;
    for (auto c : a) r.push_back(mpz_class(static_cast<unsigned long>(c)));
    return r;
}

// lift T = g h (mod p) to mod p^k; g, h monic; T monic mod p^k
void hensel_pair(const ZPoly& T, ZPoly& g, ZPoly& h, u64 p, int k) {
    ModP F{p};
    PP s, t;
    pbezout(F, reduce_mod(g, p), reduce_mod(h, p), s, t);
    mpz_class pj(static_cast<unsigned long>(p));
    mpz_class pz = pj;
    for (int j = 1; j < k; ++j) {
        mpz_class pj1 = pj * pz;
        ZPoly gh = zmul_mod(g, h, pj1);
        ZPoly e(T.size(), 0);
        for (size_t i = 0; i < T.size(); ++i) {
            mpz_class v = (T[i] - (i < gh.size() ? gh[i] : mpz_class(0))) % pj1;
            if (v < 0) v += pj1;
            e[i] = v / pj;
        }
        PP ep = reduce_mod(e, p);
        PP pg = reduce_mod(g, p), ph = reduce_mod(h, p);
        PP tau = pdivmod(F, pmul(F, t, ep), pg).second;
        PP sigma = pdivmod(F, psub(F, ep, pmul(F, tau, ph)), pg).first;
        for (size_t i = 0; i < tau.size(); ++i) g[i] = (g[i] + pj * mpz_class(static_cast<unsigned long>(tau[i]))) % pj1;
        for (size_t i = 0; i < sigma.size(); ++i) h[i] = (h[i] + pj * mpz_class(static_cast<unsigned long>(sigma[i]))) % pj1;
        pj = pj1;
    }
}

std::vector<ZPoly> zassenhaus(const ZPoly& f) {
    int n = int(f.size()) - 1;
    if (n <= 1) return {f};
    mpz_class lc = f.back();
    std::mt19937_64 rng(12345);
    // choose the prime with fewest modular factors among a few candidates
    u64 best_p = 0;
    std::vector<PP> best;
    int tried = 0;
    for (u64 p = 3; tried < 6; p += 2) {
        if (!is_prime(p)) continue;
        if (lc % mpz_class(static_cast<unsigned long>(p)) == 0) continue;
        ModP F{p};
        PP fp = reduce_mod(f, p);
        if (int(fp.size()) - 1 != n) continue;
        if (pgcd(F, fp, pderiv(F, fp)).size() != 1) continue;
        auto facs = factor_mod_p(F, fp, rng);
        ++tried;
        if (best_p == 0 || facs.size() < best.size()) {
            best_p = p;
            best = facs;
        }
        if (best.size() == 1) return {f};
    }
    u64 p = best_p;
    // coefficient bound for lc * factor
    mpz_class norm2 = 0;
    for (auto& c : f) norm2 += c * c;
    mpz_class root = sqrt(norm2) + 1;
    mpz_class bound = root * abs(lc);
    bound <<= n;
    bound = 2 * bound + 1;
    int k = 1;
    mpz_class M(static_cast<unsigned long>(p));
    while (M <= bound) {
        M *= static_cast<unsigned long>(p);
        ++k;
    }
    // monic target mod M
    mpz_class lcinv;
    mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
    ZPoly T(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
        T[i] = (f[i] * lcinv) % M;
        if (T[i] < 0) T[i] += M;
    }
    std::vector<ZPoly> lifted;
    ZPoly rest = T;
    for (size_t i = 0; i + 1 < best.size(); ++i) {
        ModP F{p};
        PP others{1};
        for (size_t j = i + 1; j < best.size(); ++j) others = pmul(F, others, best[j]);
        ZPoly g = lift_pp(best[i]), h = lift_pp(others);
        hensel_pair(rest, g, h, p, k);
        lifted.push_back(g);
        rest = h;
    }
    lifted.push_back(rest);

    // recombination
    std::vector<ZPoly> out;
    ZPoly F = f;
    std::vector<int> idx(lifted.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (int s = 1; 2 * s <= int(idx.size());) {
        bool found = false;
        std::vector<int> comb(s);
        std::iota(comb.begin(), comb.end(), 0);
        for (;;) {
            ZPoly G{F.back()};
            for (int c : comb) G = zmul_mod(G, lifted[idx[c]], M);
            for (auto& c : G) c = smod(c, M);
            ZPoly Gp = zprimitive(G), q;
            if (zdivide(F, Gp, q)) {
                out.push_back(Gp);
                F = q;
                std::vector<int> keep;
                for (int i = 0; i < int(idx.size()); ++i)
                    if (std::find(comb.begin(), comb.end(), i) == comb.end()) keep.push_back(idx[i]);
                idx = keep;
                found = true;
                break;
            }
            int i = s - 1;
            while (i >= 0 && comb[i] == int(idx.size()) - s + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
        }
        if (!found) ++s;
    }
    if (F.size() > 1) out.push_back(zprimitive(F));
    return out;
}

// rational polynomial -> primitive integer polynomial
ZPoly to_integer(const std::vector<Q>& v) {
    mpz_class den = 1;
    for (auto& q : v) den = lcm(den, q.get_den());
    ZPoly r;
    for (auto& q : v) r.push_back(mpz_class(q * den));
    return zprimitive(r);
}

std::vector<Q> newton_interpolate(const std::vector<Q>& xs, const std::vector<Q>& ys) {
    size_t n = xs.size();
    std::vector<Q> coef = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<Q> poly(1, coef[n - 1]);
    for (size_t i = n - 1; i-- > 0;) {
        // poly = poly * (x - xs[i]) + coef[i]
        std::vector<Q> np(poly.size() + 1, Q(0));
        for (size_t k = 0; k < poly.size(); ++k) {
            np[k + 1] += poly[k];
            np[k] -= poly[k] * xs[i];
        }
        np[0] += coef[i];
        poly = np;
    }
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    return poly;
}

bool all_rational(const UPoly& f) {
    for (auto& c : f)
        if (!c.is_rational()) return false;
    return true;
}

std::vector<UPoly> factor_squarefree_Q(const UPoly& g) {
    std::vector<Q> v;
    for (auto& c : g) v.push_back(c.rational());
    std::vector<UPoly> out;
    for (auto& z : zassenhaus(to_integer(v))) {
        UPoly u;
        for (auto& c : z) u.push_back(Cyclo(Q(c)));
        out.push_back(upoly::monic(u));
    }
    return out;
}

std::vector<UPoly> trager(const UPoly& g, int n) {
    int phi = euler_phi(n);
    Cyclo zeta = Cyclo::root(n, 1);
    int d = upoly::deg(g);
    for (long s : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, -6L, 7L, -7L}) {
        UPoly h = upoly::shift(g, Cyclo(-s) * zeta);  // h(x) = g(x - s zeta)
        int D = phi * d;
        std::vector<Q> xs, ys;
        for (int i = 0; i <= D; ++i) {
            xs.push_back(Q(i));
            ys.push_back(norm(upoly::eval(h, Cyclo(long(i))), n));
        }
        UPoly N = upoly::from_rational(newton_interpolate(xs, ys));
        if (upoly::deg(upoly::gcd(N, upoly::derivative(N))) > 0) continue;
        std::vector<UPoly> out;
        for (auto& Ni : factor_squarefree_Q(N)) {
            UPoly u = upoly::gcd(h, Ni);
            if (upoly::deg(u) < 1) continue;
            out.push_back(upoly::monic(upoly::shift(u, Cyclo(s) * zeta)));
        }
        return out;
    }
    throw std::runtime_error("trager: no squarefree norm found");
}

}  // namespace

Q norm(const Cyclo& a, int n) {
    if (n == 0) n = a.conductor();
    if (n % a.conductor() != 0) throw std::domain_error("norm: field does not contain element");
    if (n == 1) return a.rational();
    Cyclo r(1);
    for (int k = 1; k < n; ++k)
        if (std::gcd(k, n) == 1) r *= a.galois(k);
    return r.rational();
}

std::vector<std::vector<mpz_class>> factor_squarefree_integer(const std::vector<mpz_class>& f) {
    return zassenhaus(zprimitive(f));
}

std::vector<std::pair<UPoly, int>> factor(const UPoly& f0, int n) {
    UPoly f = f0;
    upoly::trim(f);
    if (f.empty()) throw std::domain_error("factor: zero polynomial");
    std::vector<std::pair<UPoly, int>> out;
    for (auto& [g, m] : upoly::squarefree_decomposition(f)) {
        if (upoly::deg(g) == 1) {
            out.push_back({g, m});
            continue;
        }
        std::vector<UPoly> parts;
        if (n == 1 || (all_rational(g) && n == 1)) parts = factor_squarefree_Q(g);
        else parts = trager(g, n);
        for (auto& p : parts) out.push_back({p, m});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        if (a.second != b.second) return a.second < b.second;
        return upoly::str(a.first) < upoly::str(b.first);
    });
    return out;
}

std::vector<Q> rational_roots(const UPoly& f) {
    std::vector<Q> out;
    for (auto& [g, m] : factor(f, 1))
        if (upoly::deg(g) == 1) out.push_back((-g[0] / g[1]).rational());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cmx
