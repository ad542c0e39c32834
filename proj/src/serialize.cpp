#include "cmx/serialize.hpp"

namespace cmx {

namespace {
int label_index(const ReflectionGroup& g, const std::string& l) {
    int i = g.character_by_label(l);
    if (i < 0) throw std::invalid_argument("unknown character label " + l);
    return i;
}
}  // namespace

json poly_json(const MPoly& f) { return f.str(); }

MPoly poly_from_json(const RingPtr& ring, const json& j) { return parse_poly(ring, j.get<std::string>()); }

json pbw_json(const PBW& z) {
    json out = json::array();
    const auto& g = z.algebra()->group();
    for (int w = 0; w < g.order(); ++w)
        if (!z.coeff(w).is_zero()) out.push_back({{"w", w}, {"coeff", poly_json(z.coeff(w))}});
    return out;
}

PBW pbw_from_json(const AlgPtr& a, const json& j) {
    PBW z(a);
    for (auto& t : j) {
        int w = t.at("w").get<int>();
        if (w < 0 || w >= a->group().order()) throw std::invalid_argument("group element index out of range");
        z.coeff(w) = poly_from_json(a->ring(), t.at("coeff"));
    }
    return z;
}

json ring_json(const RingPtr& r) {
    json out = json::array();
    for (int i = 0; i < r->nvars(); ++i) {
        auto [a, b] = r->bideg(i);
        out.push_back({{"name", r->name(i)}, {"bidegree", {a, b}}});
    }
    return out;
}

namespace {
RingPtr t_ring() {
    static RingPtr r = make_ring({"t"});
    return r;
}
}  // namespace

json upoly_json(const UPoly& p) {
    std::vector<MPoly::Term> terms;
    for (int i = 0; i < int(p.size()); ++i) {
        Mono m;
        m.e[0] = i;
        terms.push_back({m, p[i]});
    }
    return MPoly::from_terms(t_ring(), terms).str();
}

UPoly upoly_from_json(const json& j) {
    MPoly f = parse_poly(t_ring(), j.get<std::string>());
    UPoly p(f.is_zero() ? 0 : f.degree_in(0) + 1);
    for (auto& [m, c] : f.terms()) p[m.e[0]] = c;
    return p;
}

json cyclo_json(const Cyclo& c) { return c.str(); }

Cyclo cyclo_from_json(const json& j) {
    if (j.is_number_integer()) return Cyclo(j.get<long>());
    return parse_cyclo(j.get<std::string>());
}

json partition_json(const ReflectionGroup& g, const FamilyPartition& p) {
    json out = json::array();
    for (auto& part : p.parts) {
        json q = json::array();
        for (int c : part) q.push_back(g.label(c));
        out.push_back(q);
    }
    return out;
}

FamilyPartition partition_from_json(const ReflectionGroup& g, const json& j) {
    FamilyPartition p;
    for (auto& part : j) {
        std::vector<int> q;
        for (auto& l : part) q.push_back(label_index(g, l.get<std::string>()));
        p.parts.push_back(q);
    }
    p.canonicalize();
    return p;
}

json point_json(const ReflectionGroup& g, const ParamPoint& p) {
    json out = json::object();
    auto names = g.k_names();
    for (size_t i = 0; i < names.size(); ++i) out[names[i]] = cyclo_json(p.k[i]);
    return out;
}

ParamPoint point_from_json(const ReflectionGroup& g, const json& j) {
    std::vector<Cyclo> k;
    for (auto& n : g.k_names()) k.push_back(cyclo_from_json(j.at(n)));
    return ParamPoint::from_k(k);
}

json cellular_json(const ReflectionGroup& g, const CellularCharacter& c) {
    json m = json::object();
    for (int chi = 0; chi < int(c.mult.size()); ++chi)
        if (c.mult[chi]) m[g.label(chi)] = c.mult[chi];
    return {{"multiplicities", m}, {"factor", upoly_json(c.factor)}, {"defect", c.defect}, {"power", c.power},
            {"dim", c.dim}};
}

CellularCharacter cellular_from_json(const ReflectionGroup& g, const json& j) {
    CellularCharacter c;
    c.mult.assign(g.num_characters(), 0);
    for (auto& [label, m] : j.at("multiplicities").items()) c.mult[label_index(g, label)] = m.get<long>();
    c.factor = upoly_from_json(j.at("factor"));
    c.defect = j.at("defect").get<int>();
    c.power = j.at("power").get<int>();
    c.dim = j.at("dim").get<int>();
    return c;
}

json group_info_json(const ReflectionGroup& g) {
    json j;
    j["name"] = g.name();
    j["order"] = g.order();
    j["dim"] = g.dim();
    j["conductor"] = g.conductor();
    j["num_reflections"] = g.reflections().size();
    j["num_classes"] = g.classes().size();
    json rc = json::array();
    auto cn = g.c_names();
    for (int k = 0; k < g.num_c(); ++k)
        rc.push_back({{"name", cn[k]}, {"size", g.reflection_classes()[k].size()}, {"in_k", poly_json(g.c_in_k()[k])}});
    j["reflection_classes"] = rc;
    json orb = json::array();
    for (auto& o : g.orbits()) orb.push_back({{"hyperplanes", o.hyperplanes.size()}, {"order", o.order}});
    j["hyperplane_orbits"] = orb;
    j["k_names"] = g.k_names();
    j["aliases"] = g.spec().parameters;
    json ch = json::array();
    for (int c = 0; c < g.num_characters(); ++c) ch.push_back({{"label", g.label(c)}, {"degree", g.degree(c)}});
    j["characters"] = ch;
    return j;
}

}  // namespace cmx
