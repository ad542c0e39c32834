#include "cmx/commands.hpp"

#include "cmx/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace cmx {

namespace {

namespace fs = std::filesystem;

struct DomainError : std::runtime_error {
    std::string detail;
    DomainError(const std::string& e, std::string d) : std::runtime_error(e), detail(std::move(d)) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot read file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// FNV-1a, 64 bit
std::string hash_hex(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool needs_group(const std::string& cmd, const RunConfig& cfg) { return cmd != "arrangement" || cfg.file.empty(); }

GroupPtr load_group(const RunConfig& cfg) {
    if (cfg.group.empty()) throw DomainError("missing --group", cfg.command);
    try {
        return ReflectionGroup::build(find_group(cfg.group));
    } catch (const GroupError& e) {
        throw DomainError(e.what(), cfg.group);
    }
}

Budget budget(const RunConfig& cfg) {
    Budget b;
    if (cfg.max_seconds > 0) b.with_seconds(cfg.max_seconds);
    if (cfg.max_terms > 0) b.with_max_terms(cfg.max_terms);
    return b;
}

std::shared_ptr<const Center> center(const GroupPtr& g, const RunConfig& cfg) {
    CenterOptions opt;
    opt.degree_bound = cfg.degree_bound;
    opt.seed = cfg.seed;
    opt.budget = budget(cfg);
    return std::make_shared<Center>(make_algebra(g), opt);
}

ParamPoint point(const ReflectionGroup& g, const RunConfig& cfg) {
    if (cfg.at.empty()) throw DomainError("missing --at", cfg.command);
    return ParamPoint::parse(g, cfg.at);
}

int rep_index(const ReflectionGroup& g, const std::string& rep) {
    if (rep.empty()) return -1;
    if (rep.find_first_not_of("0123456789") == std::string::npos) {
        int i = std::stoi(rep);
        if (i >= g.num_characters()) throw DomainError("no such character", rep);
        return i;
    }
    int i = g.character_by_label(rep);
    if (i < 0) throw DomainError("no such character", rep);
    return i;
}

json cmd_group_info(const GroupPtr& g) { return group_info_json(*g); }

json cmd_center_generators(const GroupPtr& g, const RunConfig& cfg) {
    auto Z = center(g, cfg);
    json gens = json::array();
    PBW eu = euler(Z->algebra());
    int eu_index = -1;
    for (int i = 0; i < Z->num_generators(); ++i) {
        auto [a, b] = Z->bidegree(i);
        json e = {{"name", "z" + std::to_string(i + 1)},
                  {"bidegree", {a, b}},
                  {"z_degree", Z->z_degree(i)},
                  {"invariant", poly_json(Z->invariants().gens[i])}};
        if (!cfg.brief) e["element"] = pbw_json(Z->generators()[i]);
        if (Z->generators()[i] == eu) eu_index = i;
        gens.push_back(e);
    }
    return {{"count", Z->num_generators()},
            {"degree_bound", Z->invariants().degree_bound},
            {"euler", eu_index < 0 ? json(nullptr) : json("z" + std::to_string(eu_index + 1))},
            {"generators", gens}};
}

json cmd_presentation(const GroupPtr& g, const RunConfig& cfg) {
    auto Z = center(g, cfg);
    auto P = Z->presentation();
    json rels = json::array();
    for (size_t i = 0; i < P.relations.size(); ++i) {
        auto [a, b] = P.rel_bidegrees[i];
        rels.push_back({{"bidegree", {a, b}},
                        {"relation", poly_json(P.relations[i])},
                        {"at_c0", poly_json(P.relations0[i])}});
    }
    return {{"ring", ring_json(Z->z_ring())}, {"count", rels.size()}, {"relations", rels}};
}

json cmd_poisson(const GroupPtr& g, const RunConfig& cfg) {
    auto Z = center(g, cfg);
    auto M = Z->poisson_matrix();
    json rows = json::array();
    for (auto& r : M) {
        json row = json::array();
        for (auto& f : r) row.push_back(poly_json(f));
        rows.push_back(row);
    }
    json names = json::array();
    for (int i = 0; i < Z->num_generators(); ++i) names.push_back("z" + std::to_string(i + 1));
    return {{"ring", ring_json(Z->z_ring())}, {"generators", names}, {"matrix", rows}};
}

json cmd_families(const GroupPtr& g, const RunConfig& cfg) {
    Families F(center(g, cfg));
    int modes = int(!cfg.at.empty()) + int(!cfg.hyperplane.empty()) + int(cfg.generic);
    if (modes > 1) throw DomainError("choose one of --at, --hyperplane, --generic", cfg.command);
    json out;
    FamilyPartition p;
    if (!cfg.at.empty()) {
        auto pt = point(*g, cfg);
        p = F.at_point(pt);
        out["mode"] = "point";
        out["point"] = point_json(*g, pt);
    } else if (!cfg.hyperplane.empty()) {
        auto h = HyperplaneForm::parse(*g, cfg.hyperplane);
        p = F.on_hyperplane(h);
        out["mode"] = "hyperplane";
        out["hyperplane"] = h.str(*g);
    } else {
        p = F.generic();
        out["mode"] = "generic";
    }
    out["families"] = partition_json(*g, p);
    out["sizes"] = p.part_sizes();
    return out;
}

json cmd_hyperplanes(const GroupPtr& g, const RunConfig& cfg) {
    Families F(center(g, cfg));
    json hs = json::array();
    for (auto& h : F.hyperplanes()) hs.push_back({{"form", h.str(*g)}, {"families", partition_json(*g, F.on_hyperplane(h))}});
    return {{"count", hs.size()}, {"hyperplanes", hs}, {"generic", partition_json(*g, F.generic())}};
}

json cmd_cuspidal(const GroupPtr& g, const RunConfig& cfg) {
    Families F(center(g, cfg));
    auto pt = point(*g, cfg);
    auto fam = F.at_point(pt);
    FamilyPartition cusp;
    cusp.parts = F.cuspidal(pt);
    cusp.canonicalize();
    return {{"point", point_json(*g, pt)},
            {"families", partition_json(*g, fam)},
            {"cuspidal", partition_json(*g, cusp)}};
}

json cmd_cellular(const GroupPtr& g, const RunConfig& cfg) {
    auto pt = point(*g, cfg);
    json out = {{"point", point_json(*g, pt)}};
    int rep = rep_index(*g, cfg.rep);
    if (rep >= 0) {
        json ms = json::array();
        for (auto& m : rep_multiplicities(*g, pt, rep, cfg.seed))
            ms.push_back({{"factor", upoly_json(m.factor)}, {"multiplicity", m.mult}});
        out["character"] = g->label(rep);
        out["multiplicities"] = ms;
        return out;
    }
    auto r = cellular_characters(*g, pt, cfg.seed);
    json y = json::array(), v = json::array(), chars = json::array();
    for (auto& c : r.y) y.push_back(cyclo_json(c));
    for (auto& c : r.v) v.push_back(cyclo_json(c));
    for (auto& c : r.chars) chars.push_back(cellular_json(*g, c));
    out["y"] = y;
    out["v"] = v;
    out["attempts"] = r.attempts;
    out["characters"] = chars;
    out["sum_identity"] = verify_sum_identity(*g, r);
    return out;
}

json cmd_arrangement(const RunConfig& cfg) {
    RealArrangement a;
    if (!cfg.file.empty()) {
        a = RealArrangement::from_json(read_file(cfg.file));
    } else {
        auto g = load_group(cfg);
        a = RealArrangement::from_families(Families(center(g, cfg)));
    }
    json out = {{"arrangement", json::parse(a.to_json())}};
    auto p = poincare_polynomial(a);
    out["poincare"] = p;
    out["poincare_str"] = poincare_str(p);
    out["chambers"] = chamber_count(a);
    try {
        out["chambers_by_signs"] = chamber_count_by_signs(a);
    } catch (const ArrangementError&) {
        out["chambers_by_signs"] = nullptr;
    }
    out["qft"] = a.orbit_orders.empty() ? json(nullptr) : json(qft_count(a));
    return out;
}

json cmd_martino(const GroupPtr& g, const RunConfig& cfg) {
    if (cfg.rouquier_file.empty()) throw DomainError("missing --rouquier-file", cfg.command);
    Families F(center(g, cfg));
    auto rep = martino_check(F, parse_rouquier(*g, read_file(cfg.rouquier_file)), cfg.equality);
    json vs = json::array();
    for (auto& v : rep.verdicts)
        vs.push_back({{"hyperplane", v.hyperplane.empty() ? json(nullptr) : json(v.hyperplane)},
                      {"compared_with", v.compared_with},
                      {"ok", v.ok}});
    return {{"ok", rep.ok}, {"equality", cfg.equality}, {"verdicts", vs}};
}

json dispatch(const RunConfig& cfg) {
    const auto& c = cfg.command;
    if (c == "arrangement") return cmd_arrangement(cfg);
    auto g = load_group(cfg);
    if (c == "group-info") return cmd_group_info(g);
    if (c == "center-generators") return cmd_center_generators(g, cfg);
    if (c == "presentation") return cmd_presentation(g, cfg);
    if (c == "poisson-matrix") return cmd_poisson(g, cfg);
    if (c == "families") return cmd_families(g, cfg);
    if (c == "hyperplanes") return cmd_hyperplanes(g, cfg);
    if (c == "cuspidal") return cmd_cuspidal(g, cfg);
    if (c == "cellular") return cmd_cellular(g, cfg);
    if (c == "martino") return cmd_martino(g, cfg);
    throw DomainError("unknown command", c);
}

std::string cache_root(const RunConfig& cfg) {
    if (cfg.no_cache) return "";
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* e = std::getenv("CHEREDNIK_CACHE")) return e;
    return "";
}

std::string render(const json& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

void write_atomic(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << text;
        if (!out) return;
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) fs::remove(tmp, ec);
}

json canonical_config(const RunConfig& cfg) {
    json k;
    k["command"] = cfg.command;
    k["seed"] = cfg.seed;
    if (needs_group(cfg.command, cfg)) {
        auto g = load_group(cfg);
        k["group"] = g->name();
        k["group_hash"] = hash_hex(g->spec().canonical);
        if (!cfg.at.empty()) k["at"] = point_json(*g, ParamPoint::parse(*g, cfg.at));
        if (!cfg.hyperplane.empty()) k["hyperplane"] = HyperplaneForm::parse(*g, cfg.hyperplane).str(*g);
        if (!cfg.rep.empty()) k["rep"] = g->label(rep_index(*g, cfg.rep));
    }
    if (cfg.generic) k["generic"] = true;
    if (cfg.degree_bound) k["degree_bound"] = cfg.degree_bound;
    if (cfg.brief) k["brief"] = true;
    if (cfg.equality) k["equality"] = true;
    if (!cfg.file.empty()) k["file_hash"] = hash_hex(read_file(cfg.file));
    if (!cfg.rouquier_file.empty()) k["rouquier_hash"] = hash_hex(read_file(cfg.rouquier_file));
    return k;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"group-info", "center-generators", "presentation", "poisson-matrix",
                                                "families",   "hyperplanes",       "cuspidal",     "cellular",
                                                "arrangement", "martino"};
    return names;
}

std::string cache_key(const RunConfig& cfg) { return hash_hex(canonical_config(cfg).dump()); }

RunOutput run(const RunConfig& cfg) {
    RunOutput out;
    try {
        json meta = canonical_config(cfg);
        std::string root = cache_root(cfg);
        fs::path cpath;
        if (!root.empty()) {
            cpath = fs::path(root) / cfg.command / (hash_hex(meta.dump()) + ".json");
            if (fs::exists(cpath)) {
                auto doc = json::parse(read_file(cpath.string()));
                if (doc.value("config", json()) == meta) {
                    out.text = render(doc, cfg.pretty);
                    out.cached = true;
                    return out;
                }
            }
        }
        json doc;
        doc["config"] = meta;
        doc["result"] = dispatch(cfg);
        if (!cpath.empty()) write_atomic(cpath, doc.dump());
        out.text = render(doc, cfg.pretty);
    } catch (const ResourceLimit& e) {
        out.text = render({{"error", "resource limit"}, {"detail", e.what()}}, cfg.pretty);
        out.exit_code = 2;
    } catch (const DomainError& e) {
        out.text = render({{"error", e.what()}, {"detail", e.detail}}, cfg.pretty);
        out.exit_code = 1;
    } catch (const json::exception& e) {
        out.text = render({{"error", "malformed JSON"}, {"detail", e.what()}}, cfg.pretty);
        out.exit_code = 1;
    } catch (const std::exception& e) {
        out.text = render({{"error", e.what()}, {"detail", cfg.command}}, cfg.pretty);
        out.exit_code = 1;
    }
    return out;
}

}  // namespace cmx
