#include <doctest.h>

#include "cmx/groebner.hpp"
#include "cmx/matrix.hpp"
#include "cmx/upoly.hpp"

#include <random>

using namespace cmx;

namespace {

UPoly X(std::vector<long> c) {
    UPoly p;
    for (long v : c) p.push_back(Cyclo(v));
    return p;
}

MPoly small_poly(std::mt19937_64& rng, const RingPtr& r) {
    MPolyBuilder b(r);
    int terms = 1 + int(rng() % 3);
    for (int k = 0; k < terms; ++k) {
        Mono m;
        for (int v = 0; v < r->nvars(); ++v) m.e[v] = uint8_t(rng() % 3);
        b.add(m, Cyclo(long(rng() % 7) - 3, long(rng() % 2) + 1));
    }
    return b.build();
}

}  // namespace

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(11);
    auto R = make_ring({"x", "y", "z"});
    int cases = 0;
    for (int it = 0; it < 1000; ++it, ++cases) {
        MPoly a = small_poly(rng, R), b = small_poly(rng, R), c = small_poly(rng, R);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a * b).divide_exact(b) == a);
    }
    CHECK(cases >= 1000);
}

TEST_CASE("exact division") {
    auto R = make_ring({"x", "y"});
    MPoly x = MPoly::var(R, 0), y = MPoly::var(R, 1);
    CHECK((x * x - y * y).divide_exact(x - y) == x + y);
    MPoly a = x * x * y + MPoly(R, Cyclo(3));
    CHECK(a.divide_exact(a) == MPoly(R, Cyclo(1)));
    CHECK_THROWS_AS((x * x + MPoly(R, Cyclo(1))).divide_exact(x - y), NotDivisible);
}

TEST_CASE("groebner bases of small ideals") {
    auto R = make_ring({"x", "y"});
    MPoly x = MPoly::var(R, 0), y = MPoly::var(R, 1);
    auto ord = MonomialOrder::grevlex(2);
    CHECK(groebner_basis({x}, ord) == std::vector<MPoly>{x});
    CHECK(groebner_basis({x + MPoly(R, Cyclo(1)), x}, ord) == std::vector<MPoly>{MPoly(R, Cyclo(1))});
    auto gb = groebner_basis({x * x - y, y * y - x}, ord);
    CHECK(normal_form(x.pow(4) - x, gb, ord).is_zero());
    CHECK_FALSE(normal_form(x.pow(3) - x, gb, ord).is_zero());
    auto lex = MonomialOrder::lex(2);
    auto gl = groebner_basis({x * x - y, y * y - x}, lex);
    CHECK(normal_form(x.pow(4) - x, gl, lex).is_zero());
    // lex basis contains the eliminant y^4 - y
    bool eliminant = false;
    for (auto& g : gl) eliminant = eliminant || g == y.pow(4) - y;
    CHECK(eliminant);
}

TEST_CASE("kernels of algebra maps") {
    auto R = make_ring({"x", "y"});
    MPoly x = MPoly::var(R, 0), y = MPoly::var(R, 1);
    auto Z = make_ring({"z1", "z2"});
    MPoly z1 = MPoly::var(Z, 0), z2 = MPoly::var(Z, 1);
    CHECK(algebra_map_kernel({x, y}, Z).empty());
    auto cusp = algebra_map_kernel({x * x, x.pow(3)}, Z);
    REQUIRE(cusp.size() == 1);
    CHECK((cusp[0] == z2 * z2 - z1.pow(3) || cusp[0] == z1.pow(3) - z2 * z2));
    auto same = algebra_map_kernel({x, x}, Z);
    auto ord = MonomialOrder::grevlex(2);
    CHECK(normal_form(z1 - z2, groebner_basis(same, ord), ord).is_zero());
    // every generator vanishes on the images
    auto Z3 = make_ring({"a", "b", "c"});
    for (auto& k : algebra_map_kernel({x * x, x * y, y * y}, Z3)) CHECK(k.substitute({x * x, x * y, y * y}).is_zero());
}

TEST_CASE("characteristic polynomials and kernels") {
    CHECK(Mat::identity(2).charpoly() == std::vector<Cyclo>{Cyclo(1), Cyclo(-2), Cyclo(1)});
    Cyclo a = Cyclo::root(3) + Cyclo(2);
    Mat m = Mat::from_rows({{Cyclo(0), a}, {a, Cyclo(0)}});
    CHECK(m.charpoly() == std::vector<Cyclo>{-(a * a), Cyclo(0), Cyclo(1)});
    auto k = Mat::from_rows({{Cyclo(1), Cyclo(1)}, {Cyclo(1), Cyclo(1)}}).kernel();
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == -k[0][1]);
    CHECK_FALSE(k[0][0].is_zero());
}

TEST_CASE("square-free parts") {
    UPoly f = upoly::mul(upoly::mul(X({-1, 1}), X({-1, 1})), X({2, 1}));
    CHECK(upoly::squarefree_part(f) == upoly::mul(X({-1, 1}), X({2, 1})));
    CHECK(upoly::squarefree_part(X({4, 0, 2})) == X({2, 0, 1}));
    CHECK(upoly::squarefree_part(X({0, 0, 0, 1})) == X({0, 1}));
}

TEST_CASE("factorization examples and properties") {
    auto fs = factor(X({-1, 0, 1}), 1);
    REQUIRE(fs.size() == 2);
    auto q4 = factor(X({-4, 0, 0, 0, 1}), 1);
    std::vector<UPoly> got;
    for (auto& [p, m] : q4) {
        CHECK(m == 1);
        got.push_back(p);
    }
    std::sort(got.begin(), got.end(), [](const UPoly& a, const UPoly& b) { return a[0].rational() < b[0].rational(); });
    CHECK(got == std::vector<UPoly>{X({-2, 0, 1}), X({2, 0, 1})});
    CHECK(factor(X({1, 1, 1}), 1).size() == 1);
    auto z3 = factor(X({1, 1, 1}), 3);
    REQUIRE(z3.size() == 2);
    for (auto& [p, m] : z3) {
        REQUIRE(p.size() == 2);
        Cyclo root = -p[0];
        CHECK((root == Cyclo::root(3) || root == Cyclo::root(3, 2)));
    }

    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        UPoly prod{Cyclo(1)};
        int parts = 1 + int(rng() % 3);
        for (int k = 0; k < parts; ++k) {
            UPoly q;
            int d = 1 + int(rng() % 3);
            for (int j = 0; j < d; ++j) q.push_back(Cyclo(long(rng() % 9) - 4));
            q.push_back(Cyclo(1));
            prod = upoly::mul(prod, q);
        }
        auto f = factor(prod, 1);
        UPoly back{Cyclo(1)};
        for (auto& [p, m] : f) {
            back = upoly::mul(back, upoly::pow(p, m));
            if (upoly::deg(p) > 1) CHECK(rational_roots(p).empty());
        }
        CHECK(back == upoly::monic(prod));
        UPoly sq{Cyclo(1)};
        for (auto& [p, m] : f) sq = upoly::mul(sq, p);
        CHECK(upoly::squarefree_part(prod) == sq);
    }
}
