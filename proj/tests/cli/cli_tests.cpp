#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "cmx/serialize.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>

using namespace cmx;
namespace fs = std::filesystem;

namespace {

std::string binary;

struct Result {
    std::string out;
    int code = -1;
    json doc;
};

Result run(const std::string& args) {
    Result r;
    std::string cmd = "'" + binary + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    if (!r.out.empty() && r.out[0] == '{') r.doc = json::parse(r.out);
    return r;
}

fs::path temp_dir(const std::string& tag) {
    auto d = fs::temp_directory_path() / ("cherednik-cli-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

GroupPtr group(const std::string& name) { return ReflectionGroup::build(find_group(name)); }

}  // namespace

TEST_CASE("hyperplanes and families") {
    auto r = run("hyperplanes --group B2");
    REQUIRE(r.code == 0);
    std::set<std::string> forms;
    for (auto& h : r.doc["result"]["hyperplanes"]) forms.insert(h["form"]);
    CHECK(forms == std::set<std::string>{"K1_1", "K2_1", "K1_1 + K2_1", "K1_1 - K2_1"});
    auto g = group("B2");
    for (auto& h : r.doc["result"]["hyperplanes"]) {
        CHECK(HyperplaneForm::parse(*g, h["form"]).str(*g) == h["form"]);
        CHECK(partition_json(*g, partition_from_json(*g, h["families"])) == h["families"]);
    }
    auto f = run("families --group B2 --at k1=1,k2=1");
    REQUIRE(f.code == 0);
    CHECK(f.doc["result"]["sizes"] == json::array({3, 1, 1}));
    CHECK(point_json(*g, point_from_json(*g, f.doc["result"]["point"])) == f.doc["result"]["point"]);
    auto gen = run("families --group B2 --generic");
    CHECK(gen.doc["result"]["sizes"] == json::array({1, 1, 1, 1, 1}));
    CHECK(run("families --group B2 --generic --at k1=1,k2=1").code == 1);
}

TEST_CASE("cuspidal and cellular") {
    auto c = run("cuspidal --group dih8 --at a=1,b=1");
    REQUIRE(c.code == 0);
    REQUIRE(c.doc["result"]["cuspidal"].size() == 1);
    CHECK(c.doc["result"]["cuspidal"][0].size() == 3);
    CHECK(run("cuspidal --group mu2 --at c=0").code == 1);

    auto m = run("cellular --group mu2 --at c=1");
    REQUIRE(m.code == 0);
    auto g = group("mu2");
    auto chars = m.doc["result"]["characters"];
    REQUIRE(chars.size() == 2);
    std::set<std::string> seen;
    for (auto& ch : chars) {
        REQUIRE(ch["multiplicities"].size() == 1);
        seen.insert(ch["multiplicities"].begin().key());
        CHECK(ch["multiplicities"].begin().value() == 1);
        CHECK(cellular_json(*g, cellular_from_json(*g, ch)) == ch);
    }
    CHECK(seen == std::set<std::string>{"1_1", "1_2"});
    CHECK(m.doc["result"]["sum_identity"] == true);

    auto b = run("cellular --group B2 --at k1=1,k2=1 --seed 4");
    auto rep = run("cellular --group B2 --at k1=1,k2=1 --seed 4 --rep 2_1");
    REQUIRE(rep.code == 0);
    long total = 0;
    for (auto& x : rep.doc["result"]["multiplicities"]) total += x["multiplicity"].get<long>();
    CHECK(total == 2);
    long twos = 0;
    for (auto& ch : b.doc["result"]["characters"]) twos += ch["multiplicities"].value("2_1", 0L);
    CHECK(twos == 2);
}

TEST_CASE("center commands round trip") {
    auto a = make_algebra(group("B2"));
    auto gens = run("center-generators --group B2");
    REQUIRE(gens.code == 0);
    CHECK(gens.doc["result"]["count"] == 8);
    CHECK(gens.doc["result"]["euler"] == "z2");
    for (auto& z : gens.doc["result"]["generators"]) {
        CHECK(pbw_json(pbw_from_json(a, z["element"])) == z["element"]);
        CHECK(poly_json(poly_from_json(a->ring(), z["invariant"])) == z["invariant"]);
    }
    auto eu = pbw_from_json(a, gens.doc["result"]["generators"][1]["element"]);
    CHECK(eu == euler(a));

    auto pres = run("presentation --group B2");
    REQUIRE(pres.code == 0);
    CHECK(pres.doc["result"]["count"] == 9);
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> bidegs;
    for (auto& v : pres.doc["result"]["ring"]) {
        names.push_back(v["name"]);
        bidegs.push_back({v["bidegree"][0], v["bidegree"][1]});
    }
    auto ring = make_ring(names, bidegs);
    CHECK(ring_json(ring) == pres.doc["result"]["ring"]);
    for (auto& rel : pres.doc["result"]["relations"]) {
        CHECK(poly_json(poly_from_json(ring, rel["relation"])) == rel["relation"]);
        CHECK(poly_json(poly_from_json(ring, rel["at_c0"])) == rel["at_c0"]);
    }

    auto pm = run("poisson-matrix --group mu2");
    REQUIRE(pm.code == 0);
    CHECK(pm.doc["result"]["matrix"].size() == 3);
}

TEST_CASE("arrangements") {
    auto src = std::string(CMX_DATA_DIR) + "/data/arrangements/";
    auto g28 = run("arrangement --file " + src + "G28.json");
    REQUIRE(g28.code == 0);
    CHECK(g28.doc["result"]["poincare"] == json::array({1, 8, 7}));
    CHECK(g28.doc["result"]["qft"] == 4);
    CHECK(g28.doc["result"]["chambers_by_signs"] == 16);
    auto arr = g28.doc["result"]["arrangement"];
    CHECK(json::parse(RealArrangement::from_json(arr.dump()).to_json()) == arr);
    auto g4 = run("arrangement --from-group G4");
    REQUIRE(g4.code == 0);
    CHECK(g4.doc["result"]["poincare_str"] == "1 + 6t + 5t^2");
    CHECK(g4.doc["result"]["qft"] == 2);
    CHECK(run("arrangement --file /nonexistent/arr.json").code == 1);
}

TEST_CASE("refinement check") {
    auto d = temp_dir("martino");
    auto h = run("hyperplanes --group B2").doc["result"];
    json doc = {{"convention", "k"}, {"generic", h["generic"]}, {"essential", json::array()}};
    for (auto& x : h["hyperplanes"]) doc["essential"].push_back({{"hyperplane", x["form"]}, {"families", x["families"]}});
    // the same data in the sharp convention: B2 has e = 2, so the twist is trivial
    std::ofstream(d / "r.json") << doc.dump();
    auto m = run("martino --group B2 --rouquier-file " + (d / "r.json").string());
    REQUIRE(m.code == 0);
    CHECK(m.doc["result"]["ok"] == true);
    doc["generic"] = json::array({json::array({"1_1", "1_2"}), {"1_3"}, {"1_4"}, {"2_1"}});
    std::ofstream(d / "bad.json") << doc.dump();
    auto bad = run("martino --group B2 --rouquier-file " + (d / "bad.json").string());
    REQUIRE(bad.code == 0);
    CHECK(bad.doc["result"]["ok"] == false);
    fs::remove_all(d);
}

TEST_CASE("errors and limits") {
    auto r = run("group-info --group no-such-group");
    CHECK(r.code == 1);
    CHECK(r.doc["error"] == "group not found");
    CHECK(r.doc.contains("detail"));
    auto lim = run("--max-seconds 0.001 presentation --group G4");
    CHECK(lim.code == 2);
    CHECK(lim.doc["error"] == "resource limit");
    CHECK(run("families --group B2 --at k9=1").code == 1);
    CHECK(run("families --group B2 --at k1=1").code == 1);
    CHECK(run("cellular --group B2 --at k1=1,k2=1 --rep 7_7").code == 1);
    CHECK(run("bogus-command").code != 0);
    auto info = run("group-info --group G4");
    REQUIRE(info.code == 0);
    CHECK(info.doc["result"]["order"] == 24);
    CHECK(info.doc["result"]["hyperplane_orbits"][0]["order"] == 3);
}

TEST_CASE("determinism and cache") {
    auto d = temp_dir("cache");
    std::string flags = "--cache-dir " + d.string() + " ";
    for (std::string cmd : {"cellular --group B2 --at k1=1,k2=1 --seed 9", "hyperplanes --group G4",
                            "presentation --group dih6", "center-generators --group mu2"}) {
        auto fresh = run("--no-cache " + cmd);
        auto again = run("--no-cache " + cmd);
        CHECK(fresh.out == again.out);
        auto first = run(flags + cmd);
        auto cached = run(flags + cmd);
        CHECK(first.out == fresh.out);
        CHECK(cached.out == fresh.out);
    }
    size_t files = 0;
    for (auto& e : fs::recursive_directory_iterator(d))
        if (e.is_regular_file()) {
            ++files;
            CHECK(e.path().extension() == ".json");
        }
    CHECK(files == 4);
    // aliases and K names give the same cache entry
    auto a1 = run(flags + "families --group B2 --at k1=2,k2=1");
    auto a2 = run(flags + "families --group B2 --at K2_1=1,K1_1=2");
    CHECK(a1.out == a2.out);
    fs::remove_all(d);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path to cherednik> [doctest options]\n");
        return 2;
    }
    binary = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
