#include <doctest.h>

#include "cmx/families.hpp"

#include <json.hpp>
#include <random>

using namespace cmx;

namespace {

std::shared_ptr<const Center> center(const std::string& name) {
    return std::make_shared<Center>(make_algebra(ReflectionGroup::build(find_group(name))));
}

FamilyPartition part(std::vector<std::vector<int>> p) {
    FamilyPartition f{std::move(p), ""};
    f.canonicalize();
    return f;
}

// random point in K coordinates, optionally forced onto some hyperplanes
ParamPoint sample_point(const Families& F, std::mt19937_64& rng, int on) {
    auto hs = F.hyperplanes();
    int n = int(F.group().k_names().size());
    std::vector<Cyclo> k(n);
    for (auto& x : k) x = Cyclo(long(rng() % 11) - 5);
    if (on == 0 || hs.empty()) return ParamPoint::from_k(k);
    // solve the chosen forms for some coordinates by a small exact system
    std::vector<HyperplaneForm> chosen;
    for (int i = 0; i < on; ++i) chosen.push_back(hs[rng() % hs.size()]);
    Mat M{int(chosen.size()), n};
    for (int r = 0; r < int(chosen.size()); ++r)
        for (int c = 0; c < n; ++c) M(r, c) = chosen[r].coeffs[c];
    auto ker = M.kernel();
    std::vector<Cyclo> p(n);
    for (auto& v : ker) {
        Cyclo t(long(rng() % 7) - 3);
        for (int c = 0; c < n; ++c) p[c] += t * v[c];
    }
    return ParamPoint::from_k(p);
}

}  // namespace

TEST_CASE("partition meet and refinement") {
    auto p = part({{0, 1}, {2}});
    auto q = part({{0}, {1, 2}});
    CHECK(meet(p, p) == p);
    CHECK(meet(p, q) == part({{0, 1, 2}}));
    CHECK(is_union_of(part({{0, 1, 2}}), q));
    CHECK(is_union_of(p, part({{0}, {1}, {2}})));
    CHECK_FALSE(is_union_of(p, q));
    CHECK_THROWS(meet(p, part({{0, 1}})));
    CHECK(fibers(std::vector<int>{3, 1, 3, 2}) == part({{0, 2}, {1}, {3}}));
}

TEST_CASE("hyperplane forms") {
    auto g = ReflectionGroup::build(find_group("B2"));
    auto h = HyperplaneForm::parse(*g, "-2*K1_1 + 4*K2_1");
    CHECK(h.str(*g) == "K1_1 - 2*K2_1");
    CHECK(HyperplaneForm::parse(*g, h.str(*g)) == h);
    CHECK(HyperplaneForm::parse(*g, "k1 - 2*k2") == h);
    CHECK(HyperplaneForm::parse(*g, "k_{1,1} - 2*k_{2,1}") == h);
    CHECK_THROWS(HyperplaneForm::parse(*g, "K1_1*K2_1"));
    auto g4 = ReflectionGroup::build(find_group("G4"));
    auto s = HyperplaneForm::parse(*g4, "2*K1_1 + K1_2").sharp(*g4);
    CHECK(s.str(*g4) == "K1_1 + 2*K1_2");
}

TEST_CASE("central characters") {
    SUBCASE("rank one") {
        auto Z = center("mu2");
        const Algebra& A = *Z->algebra();
        PBW eu = euler(Z->algebra());
        CHECK(omega_chi(A, eu, 0) == -MPoly::var(A.group().c_ring(), 0));
        CHECK(omega_chi(A, eu, 1) == MPoly::var(A.group().c_ring(), 0));
    }
    for (auto name : {"B2", "G4", "dih8"}) {
        auto Z = center(name);
        const Algebra& A = *Z->algebra();
        const auto& g = A.group();
        PBW eu = euler(Z->algebra());
        for (int chi = 0; chi < g.num_characters(); ++chi) {
            // Euler formula from the reflections directly
            MPoly expect(g.c_ring());
            for (auto& s : g.reflections())
                expect += MPoly::var(g.c_ring(), s.cls) * (s.eps * g.chi(chi, s.elem) / Cyclo(long(g.degree(chi))));
            CHECK(omega_chi(A, eu, chi) == expect);
            for (int i = 0; i < Z->num_generators(); ++i)
                if (Z->z_degree(i) != 0) CHECK(omega_chi(A, Z->generators()[i], chi).is_zero());
        }
        std::mt19937_64 rng(2);
        for (int it = 0; it < 20; ++it) {
            const PBW& a = Z->generators()[rng() % Z->num_generators()];
            const PBW& b = Z->generators()[rng() % Z->num_generators()];
            int chi = int(rng() % g.num_characters());
            CHECK(omega_chi(A, mul(a, b), chi) == omega_chi(A, a, chi) * omega_chi(A, b, chi));
        }
        Families F(Z);
        CHECK(F.row(0).size() == F.degree0().size());
        for (int chi = 0; chi < g.num_characters(); ++chi) CHECK(F.entry(chi, F.euler_column()).total_degree() <= 1);
    }
}

TEST_CASE("generic families and hyperplanes") {
    SUBCASE("rank one") {
        Families F(center("mu2"));
        CHECK(F.generic() == part({{0}, {1}}));
        auto hs = F.hyperplanes();
        REQUIRE(hs.size() == 1);
        CHECK(hs[0].str(F.group()) == "K1_1");
        CHECK(F.on_hyperplane(hs[0]) == part({{0, 1}}));
        CHECK(F.at_point_direct(ParamPoint::from_k({Cyclo(0)})) == part({{0, 1}}));
    }
    SUBCASE("B2") {
        Families F(center("B2"));
        const auto& g = F.group();
        CHECK(F.generic() == part({{0}, {1}, {2}, {3}, {4}}));
        std::vector<std::string> hs;
        for (auto& h : F.hyperplanes()) hs.push_back(h.str(g));
        std::sort(hs.begin(), hs.end());
        CHECK(hs == std::vector<std::string>{"K1_1", "K1_1 + K2_1", "K1_1 - K2_1", "K2_1"});
        auto p = F.on_hyperplane(HyperplaneForm::parse(g, "K1_1 - K2_1"));
        CHECK(p.part_sizes() == std::vector<size_t>{3, 1, 1});
        int two = g.character_by_label("2_1");
        CHECK(p.parts[p.part_of(two)].size() == 3);
        CHECK(F.at_point(ParamPoint::parse(g, "k1=1,k2=1")) == p);
        CHECK(F.on_hyperplane(HyperplaneForm::parse(g, "K1_1 + 3*K2_1")) == F.generic());
        CHECK(F.at_point(ParamPoint::parse(g, "k1=0,k2=0")).size() == 1);
    }
    SUBCASE("G4") {
        Families F(center("G4"));
        CHECK(F.hyperplanes().size() == 6);
    }
    for (auto name : {"B2", "G4", "dih8", "dih6"}) {
        Families F(center(name));
        for (auto& h : F.hyperplanes()) {
            auto p = F.on_hyperplane(h);
            CHECK(is_union_of(p, F.generic()));
            CHECK(p.size() < F.generic().size());
        }
    }
}

TEST_CASE("meet formula against direct specialization") {
    for (auto name : {"B2", "G4", "dih8"}) {
        Families F(center(name));
        std::mt19937_64 rng(17);
        int mismatches = 0;
        for (int it = 0; it < 50; ++it) {
            auto p = sample_point(F, rng, it % 3);
            if (!(F.at_point(p) == F.at_point_direct(p))) ++mismatches;
        }
        CHECK(mismatches == 0);
        CHECK(F.at_point(ParamPoint::from_k(std::vector<Cyclo>(F.group().k_names().size()))).size() == 1);
    }
}

TEST_CASE("cuspidal families") {
    Families D(center("dih8"));
    auto cusp = D.cuspidal(ParamPoint::parse(D.group(), "a=1,b=1"));
    REQUIRE(cusp.size() == 1);
    CHECK(cusp[0].size() == 3);
    Families M(center("mu2"));
    CHECK(M.cuspidal(ParamPoint::parse(M.group(), "c=1")).empty());
    CHECK(M.cuspidal(ParamPoint::parse(M.group(), "c=-3")).empty());
    CHECK_THROWS(M.cuspidal(ParamPoint::parse(M.group(), "c=0")));
}

TEST_CASE("refinement test against supplied families") {
    Families F(center("B2"));
    const auto& g = F.group();
    auto labels = [&](const FamilyPartition& p) {
        nlohmann::json j = nlohmann::json::array();
        for (auto& part : p.parts) {
            nlohmann::json q = nlohmann::json::array();
            for (int c : part) q.push_back(g.label(c));
            j.push_back(q);
        }
        return j;
    };
    nlohmann::json doc;
    doc["convention"] = "k";
    doc["generic"] = labels(F.generic());
    doc["essential"] = nlohmann::json::array();
    for (auto& h : F.hyperplanes())
        doc["essential"].push_back({{"hyperplane", h.sharp(g).str(g)}, {"families", labels(F.on_hyperplane(h))}});
    auto rep = martino_check(F, parse_rouquier(g, doc.dump()));
    CHECK(rep.ok);
    CHECK(rep.verdicts.size() == 5);
    CHECK(martino_check(F, parse_rouquier(g, doc.dump()), true).ok);
    // Rouquier families coarser than the CM families break the union property
    doc["generic"] = nlohmann::json::array({{"1_1", "1_2"}, {"1_3"}, {"1_4"}, {"2_1"}});
    CHECK_FALSE(martino_check(F, parse_rouquier(g, doc.dump())).ok);
    doc["generic"] = nlohmann::json::array({{"1_1"}, {"1_2"}, {"1_3"}, {"1_4"}, {"9_9"}});
    CHECK_THROWS(parse_rouquier(g, doc.dump()));
}
