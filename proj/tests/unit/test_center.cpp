#include <doctest.h>

#include "cmx/center.hpp"

#include <algorithm>
#include <random>

using namespace cmx;

namespace {

AlgPtr algebra(const std::string& name) { return make_algebra(ReflectionGroup::build(find_group(name))); }

MPoly reynolds(const Algebra& A, const MPoly& f) {
    MPoly s = A.zero();
    for (int w = 0; w < A.group().order(); ++w) s += A.act(w, f);
    return s * Cyclo(1, long(A.group().order()));
}

std::vector<Mono> monomials(const Algebra& A, int a, int b) {
    std::vector<Mono> out;
    int n = A.rank();
    int top = std::max(a, b);
    std::vector<int> idx(2 * n, 0);
    while (true) {
        int sa = 0, sb = 0;
        for (int i = 0; i < n; ++i) {
            sa += idx[i];
            sb += idx[n + i];
        }
        if (sa == a && sb == b) {
            Mono m;
            for (int i = 0; i < n; ++i) {
                m.e[A.x_var(i)] = uint8_t(idx[i]);
                m.e[A.y_var(i)] = uint8_t(idx[n + i]);
            }
            out.push_back(m);
        }
        int k = 0;
        while (k < 2 * n && idx[k] == top) idx[k++] = 0;
        if (k == 2 * n) break;
        ++idx[k];
    }
    return out;
}

// exact rank of the coefficient matrix of a family of polynomials
int exact_rank(const std::vector<MPoly>& polys) {
    std::map<Mono, int> cols;
    for (auto& p : polys)
        for (auto& [m, c] : p.terms()) cols.emplace(m, 0);
    int k = 0;
    for (auto& [m, i] : cols) i = k++;
    if (polys.empty() || cols.empty()) return 0;
    Mat M{int(polys.size()), int(cols.size())};
    for (size_t r = 0; r < polys.size(); ++r)
        for (auto& [m, c] : polys[r].terms()) M(int(r), cols[m]) = c;
    return M.rank();
}

// dimension of the invariants of a bidegree via exact Reynolds images
int invariant_dim(const Algebra& A, int a, int b) {
    std::vector<MPoly> imgs;
    for (auto& m : monomials(A, a, b)) imgs.push_back(reynolds(A, MPoly::monomial(A.ring(), m)));
    return exact_rank(imgs);
}

MPoly euler_invariant(const Algebra& A) {
    MPoly f = A.zero();
    for (int j = 0; j < A.rank(); ++j) f += A.x(j) * A.y(j);
    return f;
}

int find_gen(const Center& Z, Bideg b) {
    for (int i = 0; i < Z.num_generators(); ++i)
        if (Z.bidegree(i) == b) return i;
    return -1;
}

MPoly set_c_zero(const Center& Z, const MPoly& f) {
    std::vector<MPoly> im;
    for (int v = 0; v < Z.z_ring()->nvars(); ++v)
        im.push_back(v < Z.algebra()->num_c() ? MPoly(Z.z_ring()) : MPoly::var(Z.z_ring(), v));
    return f.substitute(im);
}

}  // namespace

TEST_CASE("bigraded Molien series against Reynolds ranks") {
    auto A = algebra("mu2");
    auto mol = molien_series(A->group(), 6);
    for (auto [bd, d] : mol) CHECK(d == ((bd.first + bd.second) % 2 == 0 ? 1 : 0));
    for (auto name : {"B2", "dih6", "G4"}) {
        auto B = algebra(name);
        auto m = molien_series(B->group(), 4);
        for (auto [bd, d] : m)
            if (bd.first + bd.second > 0) CHECK(d == invariant_dim(*B, bd.first, bd.second));
    }
}

TEST_CASE("fundamental invariants") {
    SUBCASE("rank one") {
        auto A = algebra("mu2");
        auto sys = fundamental_invariants(A);
        REQUIRE(sys.gens.size() == 3);
        CHECK(sys.gens[0] == A->y(0) * A->y(0));
        CHECK(sys.gens[1] == A->x(0) * A->y(0));
        CHECK(sys.gens[2] == A->x(0) * A->x(0));
    }
    SUBCASE("B2 bidegrees, invariance and minimality") {
        auto A = algebra("B2");
        auto sys = fundamental_invariants(A);
        std::vector<Bideg> expect{{0, 2}, {1, 1}, {2, 0}, {0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}};
        CHECK(sys.bidegrees == expect);
        for (size_t i = 0; i < sys.gens.size(); ++i) {
            CHECK(A->is_invariant(sys.gens[i]));
            auto bd = sys.gens[i].bidegrees();
            REQUIRE(bd.size() == 1);
            CHECK(bd[0] == sys.bidegrees[i]);
            // products of the other generators in this bidegree do not reach gens[i]
            std::vector<MPoly> prods;
            for (size_t j = 0; j < sys.gens.size(); ++j)
                for (size_t k = j; k < sys.gens.size(); ++k) {
                    if (j == i || k == i) continue;
                    auto [a1, b1] = sys.bidegrees[j];
                    auto [a2, b2] = sys.bidegrees[k];
                    if (Bideg{a1 + a2, b1 + b2} == sys.bidegrees[i]) prods.push_back(sys.gens[j] * sys.gens[k]);
                }
            int r = exact_rank(prods);
            prods.push_back(sys.gens[i]);
            CHECK(exact_rank(prods) == r + 1);
        }
        CHECK(sys.gens[1] == euler_invariant(*A));
    }
    SUBCASE("G4 Z-degrees") {
        auto A = algebra("G4");
        auto sys = fundamental_invariants(A);
        std::vector<int> zd;
        for (auto [a, b] : sys.bidegrees) zd.push_back(a - b);
        std::sort(zd.begin(), zd.end());
        CHECK(zd == std::vector<int>{-6, -4, -2, 0, 0, 2, 4, 6});
    }
    SUBCASE("too small a bound is reported") {
        auto A = algebra("B2");
        CHECK_THROWS_AS(fundamental_invariants(A, 2), InvariantError);
    }
}

TEST_CASE("center generators") {
    for (auto name : {"mu2", "B2", "G4"}) {
        auto A = algebra(name);
        Center Z(A);
        for (int i = 0; i < Z.num_generators(); ++i) {
            const PBW& z = Z.generators()[i];
            CHECK(is_central(z));
            CHECK(z.trunc() == Z.invariants().gens[i]);
            auto bd = z.bidegrees();
            for (auto& b : bd) CHECK(b == Z.bidegree(i));
        }
        int e = find_gen(Z, {1, 1});
        REQUIRE(e >= 0);
        CHECK(Z.generators()[e] == euler(A));
    }
}

TEST_CASE("splitting multiples of parameters") {
    auto A = algebra("B2");
    Center Z(A);
    PBW eu = euler(A);
    auto s = Z.split_C0_multiple(eu.scale(A->c(0)));
    REQUIRE(s.size() == 1);
    CHECK(s.at(0) == eu);
    CHECK(Z.split_C0_multiple(PBW(A)).empty());
    CHECK_THROWS(Z.split_C0_multiple(eu));

    // lift of eu + C1 at the lowest degree: the remainder is a constant multiple
    PBW z = eu + PBW::from_poly(A, A->c(0));
    MPoly F0 = Z.preimage0(euler_invariant(*A));
    PBW u = Z.pi(F0) - z;
    auto parts = Z.split_C0_multiple(u);
    REQUIRE(parts.size() == 1);
    CHECK(parts.at(0).bidegrees() == std::vector<Bideg>{{0, 0}});
    CHECK(parts.at(0) == PBW::from_poly(A, A->constant(Cyclo(-1))));

    // eu^2 against the lift of its truncation
    PBW eu2 = mul(eu, eu);
    PBW w = eu2 - trunc_inverse(A, (euler_invariant(*A) * euler_invariant(*A)));
    auto hs = Z.split_C0_multiple(w);
    PBW sum(A);
    for (auto& [k, h] : hs) {
        CHECK(is_central(h));
        sum += h.scale(A->c(k));
    }
    CHECK(sum == w);
}

TEST_CASE("preimages under pi") {
    auto A = algebra("B2");
    Center Z(A);
    for (int i = 0; i < Z.num_generators(); ++i) CHECK(Z.preimage(Z.generators()[i]) == Z.z(i));
    PBW eu = euler(A);
    PBW eu2 = mul(eu, eu);
    MPoly F = Z.preimage(eu2);
    CHECK(Z.pi(F) == eu2);
    int e = find_gen(Z, {1, 1});
    CHECK(F == Z.z(e) * Z.z(e));
    PBW br = Z.poisson_bracket(Z.generators()[1], Z.generators()[5]);
    MPoly G = Z.preimage(br);
    // independent re-expansion by direct products
    PBW direct(A);
    for (auto& [m, c] : G.terms()) {
        PBW p = PBW::from_poly(A, A->constant(c));
        Mono cm;
        for (int k = 0; k < A->num_c(); ++k) cm.e[A->c_var(k)] = m.e[k];
        p = p.scale(MPoly::monomial(A->ring(), cm));
        for (int j = 0; j < Z.num_generators(); ++j)
            for (int r = 0; r < m.e[Z.z_var(j)]; ++r) p = mul(p, Z.generators()[j]);
        direct += p;
    }
    CHECK(direct == br);
    CHECK_THROWS(Z.preimage(PBW::from_poly(A, A->x(0))));
}

TEST_CASE("kernel of the commutative specialization") {
    auto A = algebra("mu2");
    Center Z(A);
    auto k0 = Z.kernel0();
    REQUIRE(k0.size() == 1);
    CHECK((k0[0] == Z.z(0) * Z.z(2) - Z.z(1) * Z.z(1) || k0[0] == Z.z(1) * Z.z(1) - Z.z(0) * Z.z(2)));
}

TEST_CASE("presentations") {
    SUBCASE("rank one") {
        auto A = algebra("mu2");
        Center Z(A);
        auto P = Z.presentation();
        REQUIRE(P.relations.size() == 1);
        CHECK(Z.pi(P.relations[0]).is_zero());
        CHECK(set_c_zero(Z, P.relations[0]) == P.relations0[0]);
        CHECK_FALSE(P.relations[0] == P.relations0[0]);
    }
    SUBCASE("B2") {
        auto A = algebra("B2");
        Center Z(A);
        auto P = Z.presentation();
        CHECK(P.relations.size() == 9);
        for (size_t j = 0; j < P.relations.size(); ++j) {
            CHECK(Z.pi(P.relations[j]).is_zero());
            CHECK(set_c_zero(Z, P.relations[j]) == P.relations0[j]);
            CHECK(P.relations[j].bidegrees().size() == 1);
        }
        auto h = Z.hilbert_function(P.relations0, 8);
        auto mol = molien_series(A->group(), 8);
        for (auto [bd, d] : h) CHECK(d == mol.at(bd));
    }
    SUBCASE("dihedral") {
        std::vector<std::pair<std::string, size_t>> cases{{"dih6", 5}, {"dih8", 9}, {"dih10", 14}};
        for (auto& [name, count] : cases) {
            auto A = algebra(name);
            Center Z(A);
            auto P = Z.presentation();
            CHECK(P.relations.size() == count);
            for (auto& r : P.relations) CHECK(Z.pi(r).is_zero());
            if (name != "dih10") {
                auto h = Z.hilbert_function(P.relations0, 6);
                auto mol = molien_series(A->group(), 6);
                for (auto [bd, d] : h) CHECK(d == mol.at(bd));
            }
        }
    }
    SUBCASE("G4") {
        auto A = algebra("G4");
        Center Z(A);
        auto P = Z.presentation();
        CHECK(P.relations.size() == 9);
        for (auto& r : P.relations) CHECK(Z.pi(r).is_zero());
    }
}

TEST_CASE("Poisson bracket") {
    for (auto name : {"mu2", "B2", "G4"}) {
        auto A = algebra(name);
        Center Z(A);
        PBW eu = euler(A);
        for (int i = 0; i < Z.num_generators(); ++i) {
            const PBW& z = Z.generators()[i];
            CHECK(Z.poisson_bracket(eu, z) == z.scale(A->constant(Cyclo(long(Z.z_degree(i))))));
            CHECK(Z.poisson_bracket(z, z).is_zero());
        }
    }
    auto A = algebra("B2");
    Center Z(A);
    auto M = Z.poisson_matrix();
    int e = find_gen(Z, {1, 1});
    for (int j = 0; j < Z.num_generators(); ++j) {
        CHECK(M[e][j] == Z.z(j) * Cyclo(long(Z.z_degree(j))));
        CHECK(M[j][e] == -M[e][j]);
    }
    std::mt19937_64 rng(3);
    auto random_central = [&] {
        PBW p(A);
        for (int k = 0; k < 2; ++k) {
            PBW g = Z.generators()[rng() % Z.num_generators()];
            if (rng() % 2) g = mul(g, Z.generators()[rng() % Z.num_generators()]);
            if (rng() % 3 == 0) g = g.scale(A->c(int(rng() % A->num_c())));
            p += g.scale(A->constant(Cyclo(long(rng() % 5) - 2)));
        }
        return p;
    };
    for (int it = 0; it < 10; ++it) {
        PBW a = random_central(), b = random_central(), c = random_central();
        CHECK(Z.poisson_bracket(a, b) == -Z.poisson_bracket(b, a));
        CHECK(Z.poisson_bracket(a, mul(b, c)) == mul(Z.poisson_bracket(a, b), c) + mul(b, Z.poisson_bracket(a, c)));
        PBW jac = Z.poisson_bracket(a, Z.poisson_bracket(b, c)) + Z.poisson_bracket(b, Z.poisson_bracket(c, a)) +
                  Z.poisson_bracket(c, Z.poisson_bracket(a, b));
        CHECK(jac.is_zero());
        CHECK(Z.poisson_bracket(a.scale(A->c(0)), b) == Z.poisson_bracket(a, b).scale(A->c(0)));
    }
    for (int i = 0; i < Z.num_generators(); ++i)
        for (int j = 0; j < Z.num_generators(); ++j) {
            PBW br = Z.poisson_bracket(Z.generators()[i], Z.generators()[j]);
            if (br.is_zero()) continue;
            auto [a1, b1] = Z.bidegree(i);
            auto [a2, b2] = Z.bidegree(j);
            for (auto bd : br.bidegrees()) CHECK(bd == Bideg{a1 + a2 - 1, b1 + b2 - 1});
        }
}
