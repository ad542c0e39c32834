#include "matching.hpp"

#include "cmx/upoly.hpp"

#include <map>
#include <optional>

namespace cmx {

UPoly interpolate(const std::vector<Cyclo>& xs, const std::vector<Cyclo>& ys) {
    size_t n = xs.size();
    std::vector<Cyclo> d = ys;
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) d[i] = (d[i] - d[i - 1]) / (xs[i] - xs[i - k]);
    UPoly p;
    for (size_t i = n; i-- > 0;) {
        p = upoly::mul(p, UPoly{-xs[i], Cyclo(1)});
        p = upoly::add(p, UPoly{d[i]});
    }
    upoly::trim(p);
    return p;
}

namespace {

struct Setup {
    const Center& Z;
    RingPtr ring;
    int nc = 0, n = 0;
    std::vector<MPoly> rels0;                        // foreign relations at C = 0
    std::vector<std::vector<Mono>> cols;             // our z-monomials per generator
    std::vector<std::vector<MPoly>> vals;            // pi_0 of those
    std::vector<int> quad;                           // quadratic generators, Euler first
    std::vector<std::pair<int, int>> unknowns;       // (generator, column)
    std::vector<bool> is_unknown;

    Setup(const Center& z, RingPtr r, const std::vector<MPoly>& relations) : Z(z), ring(std::move(r)) {
        nc = Z.algebra()->num_c();
        n = Z.num_generators();
        if (ring->nvars() != nc + n) throw MatchError("foreign ring has the wrong number of variables");
        std::vector<MPoly> im;
        for (int v = 0; v < ring->nvars(); ++v) im.push_back(v < nc ? MPoly(ring) : MPoly::var(ring, v));
        for (auto& f : relations) rels0.push_back(f.substitute(im));
        const auto& inv = Z.invariants().gens;
        is_unknown.assign(n, false);
        for (int i = 0; i < n; ++i) {
            auto [a, b] = Z.bidegree(i);
            cols.push_back(Z.z_monomials({a, b}));
            std::vector<MPoly> v;
            for (auto& m : cols.back()) {
                MPoly p = Z.algebra()->constant(Cyclo(1));
                for (int j = 0; j < n; ++j)
                    for (int e = 0; e < m.e[Z.z_var(j)]; ++e) p = p * inv[j];
                v.push_back(p);
            }
            vals.push_back(std::move(v));
            if (a + b == 2) {
                if (cols.back().size() != 1) throw MatchError("quadratic bidegree with several monomials");
                if (a == 1 && b == 1)
                    quad.insert(quad.begin(), i);
                else
                    quad.push_back(i);
            } else {
                is_unknown[i] = true;
                for (int c = 0; c < int(cols.back().size()); ++c) unknowns.push_back({i, c});
            }
        }
        if (quad.size() != 3) throw MatchError("expected three quadratic generators");
    }

    int unknown_degree(const Mono& m) const {
        int d = 0;
        for (int i = 0; i < n; ++i)
            if (is_unknown[i]) d += m.e[nc + i];
        return d;
    }

    std::vector<MPoly> images(const Cyclo& a, const std::vector<Cyclo>& L) const {
        std::vector<MPoly> out(nc, Z.algebra()->zero());
        std::vector<MPoly> g(n, Z.algebra()->zero());
        g[quad[0]] = vals[quad[0]][0];
        g[quad[1]] = vals[quad[1]][0];
        g[quad[2]] = vals[quad[2]][0] * a;
        for (size_t u = 0; u < unknowns.size(); ++u) {
            auto [i, c] = unknowns[u];
            if (!L[u].is_zero()) g[i] += vals[i][c] * L[u];
        }
        out.insert(out.end(), g.begin(), g.end());
        return out;
    }

    std::vector<MPoly> residuals(const std::vector<int>& which, const Cyclo& a, const std::vector<Cyclo>& L) const {
        auto im = images(a, L);
        std::vector<MPoly> out;
        for (int r : which) out.push_back(rels0[r].substitute(im));
        return out;
    }
};

// coefficient vectors of residual lists over a common monomial index
struct Coords {
    std::map<std::pair<int, Mono>, int> index;
    int add(const std::vector<MPoly>& rs) {
        for (int r = 0; r < int(rs.size()); ++r)
            for (auto& [m, c] : rs[r].terms()) index.emplace(std::pair{r, m}, int(index.size()));
        return int(index.size());
    }
    std::vector<Cyclo> vec(const std::vector<MPoly>& rs) const {
        std::vector<Cyclo> v(index.size());
        for (int r = 0; r < int(rs.size()); ++r)
            for (auto& [m, c] : rs[r].terms()) v[index.at({r, m})] = c;
        return v;
    }
};

struct Linear {
    Mat M;
    std::vector<Cyclo> b;
};

Linear linear_system(const Setup& S, const std::vector<int>& lin, const Cyclo& a) {
    size_t N = S.unknowns.size();
    std::vector<Cyclo> zero(N);
    auto r0 = S.residuals(lin, a, zero);
    std::vector<std::vector<MPoly>> rj;
    Coords co;
    co.add(r0);
    for (size_t j = 0; j < N; ++j) {
        auto e = zero;
        e[j] = Cyclo(1);
        auto r = S.residuals(lin, a, e);
        for (size_t k = 0; k < r.size(); ++k) r[k] -= r0[k];
        co.add(r);
        rj.push_back(std::move(r));
    }
    Linear out{Mat(int(co.index.size()), int(N)), {}};
    for (size_t j = 0; j < N; ++j) {
        auto v = co.vec(rj[j]);
        for (size_t i = 0; i < v.size(); ++i) out.M(int(i), int(j)) = v[i];
    }
    out.b = co.vec(r0);
    for (auto& x : out.b) x = -x;
    return out;
}

// particular solution and kernel basis of M L = b; nullopt when inconsistent
std::optional<std::pair<std::vector<Cyclo>, std::vector<std::vector<Cyclo>>>> solve(const Linear& s) {
    int R = s.M.rows(), N = s.M.cols();
    Mat A(R, N + 1);
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < N; ++j) A(i, j) = s.M(i, j);
        A(i, N) = s.b[i];
    }
    auto piv = A.rref();
    std::vector<Cyclo> x(N);
    for (int r = 0; r < int(piv.size()); ++r) {
        if (piv[r] == N) return std::nullopt;
        x[piv[r]] = A(r, N);
    }
    return std::pair{x, s.M.kernel()};
}

bool nondegenerate(const Setup& S, const std::vector<Cyclo>& L) {
    // per bidegree: coefficients of foreign generators on our generators of that bidegree
    std::map<Bideg, std::vector<int>> by;
    for (int i = 0; i < S.n; ++i)
        if (S.is_unknown[i]) by[S.Z.bidegree(i)].push_back(i);
    for (auto& [bd, gens] : by) {
        int k = int(gens.size());
        Mat T(k, k);
        for (size_t u = 0; u < S.unknowns.size(); ++u) {
            auto [i, c] = S.unknowns[u];
            const Mono& m = S.cols[i][c];
            if (m.deg() != 1) continue;
            for (int r = 0; r < k; ++r)
                for (int s = 0; s < k; ++s)
                    if (gens[r] == i && m.e[S.Z.z_var(gens[s])] == 1) T(r, s) = L[u];
        }
        if (T.det().is_zero()) return false;
    }
    return true;
}

}  // namespace

std::vector<GeneratorMatch> match_generators(const Center& Z, const RingPtr& ring,
                                             const std::vector<MPoly>& relations) {
    Setup S(Z, ring, relations);
    size_t N = S.unknowns.size();
    std::vector<int> lin, all;
    int amax = 0, dmax = 0;
    for (int r = 0; r < int(S.rels0.size()); ++r) {
        all.push_back(r);
        int d = 0, ea = 0;
        for (auto& [m, c] : S.rels0[r].terms()) {
            d = std::max(d, S.unknown_degree(m));
            ea = std::max(ea, int(m.e[S.nc + S.quad[2]]));
        }
        dmax = std::max(dmax, d);
        if (d == 1) {
            lin.push_back(r);
            amax = std::max(amax, ea);
        }
    }
    if (lin.empty()) throw MatchError("no relation is linear in the higher generators");

    // det(M^T M) as a polynomial in the scale; nondecomposable solutions need a rank drop
    int D = 2 * int(N) * amax;
    std::vector<Cyclo> xs, ys;
    for (int t = 1; t <= D + 1; ++t) {
        auto s = linear_system(S, lin, Cyclo(long(t)));
        xs.push_back(Cyclo(long(t)));
        ys.push_back((s.M.transpose() * s.M).det());
    }
    UPoly det = interpolate(xs, ys);
    if (det.empty()) throw MatchError("linear relations are rank deficient for every scale");

    std::vector<GeneratorMatch> out;
    for (const Q& root : rational_roots(det)) {
        if (root == 0) continue;
        Cyclo a(root);
        auto sol = solve(linear_system(S, lin, a));
        if (!sol) continue;
        auto& [x0, ker] = *sol;
        std::vector<std::vector<Cyclo>> cands;
        if (ker.empty()) {
            cands.push_back(x0);
        } else if (ker.size() == 1) {
            auto at = [&](const Cyclo& t) {
                auto L = x0;
                for (size_t j = 0; j < N; ++j) L[j] += t * ker[0][j];
                return L;
            };
            std::vector<std::vector<MPoly>> samples;
            std::vector<Cyclo> ts;
            Coords co;
            for (int t = 0; t <= dmax; ++t) {
                ts.push_back(Cyclo(long(t)));
                samples.push_back(S.residuals(all, a, at(ts.back())));
                co.add(samples.back());
            }
            std::vector<std::vector<Cyclo>> vecs;
            for (auto& s : samples) vecs.push_back(co.vec(s));
            UPoly g;
            for (size_t k = 0; k < co.index.size(); ++k) {
                std::vector<Cyclo> vk;
                for (auto& v : vecs) vk.push_back(v[k]);
                g = upoly::gcd(g, interpolate(ts, vk));
            }
            if (g.empty()) throw MatchError("a one-parameter family of matches");
            for (const Q& t : rational_roots(g)) cands.push_back(at(Cyclo(t)));
        } else {
            throw MatchError("kernel of dimension " + std::to_string(ker.size()) + " is not supported");
        }
        for (auto& L : cands) {
            bool ok = nondegenerate(S, L);
            for (auto& r : S.residuals(all, a, L)) ok = ok && r.is_zero();
            if (!ok) continue;
            GeneratorMatch m;
            m.scale = a;
            auto im = S.images(a, L);
            m.invariants.assign(im.begin() + S.nc, im.end());
            for (int i = 0; i < S.n; ++i) {
                MPoly p(Z.z_ring());
                if (i == S.quad[0] || i == S.quad[1]) p = Z.z(i);
                if (i == S.quad[2]) p = Z.z(i) * a;
                for (size_t u = 0; u < N; ++u)
                    if (S.unknowns[u].first == i) p += MPoly::monomial(Z.z_ring(), S.cols[i][S.unknowns[u].second], L[u]);
                m.images0.push_back(p);
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

std::vector<MPoly> lift_match(const Center& Z, const GeneratorMatch& m, const std::vector<int>& perm) {
    std::vector<MPoly> im;
    for (int p : perm) im.push_back(MPoly::var(Z.z_ring(), p));
    for (auto& f : m.invariants) im.push_back(Z.preimage_trunc(f));
    return im;
}

}  // namespace cmx
