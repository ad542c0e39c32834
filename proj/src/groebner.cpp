#include "cmx/groebner.hpp"

#include <algorithm>
#include <numeric>

namespace cmx {

MonomialOrder MonomialOrder::lex(int n) {
    MonomialOrder o;
    o.kind = Kind::Lex;
    o.nvars = n;
    o.weights.assign(n, 1);
    return o;
}

MonomialOrder MonomialOrder::grevlex(int n, std::vector<int> weights) {
    MonomialOrder o;
    o.kind = Kind::Grevlex;
    o.nvars = n;
    o.weights = weights.empty() ? std::vector<int>(n, 1) : std::move(weights);
    o.blocks = {n};
    return o;
}

MonomialOrder MonomialOrder::block(std::vector<int> sizes, std::vector<int> weights) {
    MonomialOrder o;
    o.kind = Kind::Block;
    o.nvars = std::accumulate(sizes.begin(), sizes.end(), 0);
    o.weights = weights.empty() ? std::vector<int>(o.nvars, 1) : std::move(weights);
    o.blocks = std::move(sizes);
    return o;
}

int MonomialOrder::weighted_degree(const Mono& m) const {
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += weights[i] * m.e[i];
    return d;
}

int MonomialOrder::compare(const Mono& a, const Mono& b) const {
    if (kind == Kind::Lex) {
        for (int i = 0; i < nvars; ++i)
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        return 0;
    }
    int start = 0;
    for (int bs : blocks) {
        int da = 0, db = 0;
        for (int i = start; i < start + bs; ++i) {
            da += weights[i] * a.e[i];
            db += weights[i] * b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (int i = start + bs - 1; i >= start; --i)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        start += bs;
    }
    return 0;
}

namespace {

using Term = MPoly::Term;

// terms in ascending order; leading term at back
struct GPoly {
    std::vector<Term> t;
    int sugar = 0;
    uint32_t mask = 0;
    const Mono& lm() const { return t.back().first; }
    const Cyclo& lc() const { return t.back().second; }
};

uint32_t divmask(const Mono& m) {
    uint32_t r = 0;
    for (int i = 0; i < kMaxVars; ++i)
        if (m.e[i]) r |= 1u << i;
    return r;
}

struct Ctx {
    const MonomialOrder& ord;
    bool less(const Mono& a, const Mono& b) const { return ord.compare(a, b) < 0; }

    GPoly make(const MPoly& p) const {
        GPoly g;
        g.t = p.terms();
        std::sort(g.t.begin(), g.t.end(), [&](const Term& a, const Term& b) { return less(a.first, b.first); });
        if (!g.t.empty()) {
            g.sugar = 0;
            for (auto& x : g.t) g.sugar = std::max(g.sugar, ord.weighted_degree(x.first));
            g.mask = divmask(g.lm());
        }
        return g;
    }

    // f - c * m * g
    void sub_mul(GPoly& f, const Cyclo& c, const Mono& m, const GPoly& g) const {
        std::vector<Term> out;
        out.reserve(f.t.size() + g.t.size());
        size_t i = 0, j = 0;
        while (i < f.t.size() || j < g.t.size()) {
            if (j == g.t.size()) {
                out.push_back(std::move(f.t[i++]));
                continue;
            }
            Mono gm = g.t[j].first * m;
            if (i == f.t.size()) {
                out.push_back({gm, -(c * g.t[j].second)});
                ++j;
                continue;
            }
            int cmp = ord.compare(f.t[i].first, gm);
            if (cmp < 0) {
                out.push_back(std::move(f.t[i++]));
            } else if (cmp > 0) {
                out.push_back({gm, -(c * g.t[j].second)});
                ++j;
            } else {
                Cyclo v = f.t[i].second - c * g.t[j].second;
                if (!v.is_zero()) out.push_back({f.t[i].first, std::move(v)});
                ++i;
                ++j;
            }
        }
        f.t = std::move(out);
        f.sugar = std::max(f.sugar, g.sugar + ord.weighted_degree(m));
        f.mask = f.t.empty() ? 0 : divmask(f.lm());
    }

    const GPoly* find_reducer(const Mono& m, const std::vector<const GPoly*>& G) const {
        uint32_t mm = divmask(m);
        for (auto* g : G)
            if ((g->mask & ~mm) == 0 && g->lm().divides(m)) return g;
        return nullptr;
    }

    // full reduction; irreducible terms collected in ascending order
    GPoly reduce(GPoly f, const std::vector<const GPoly*>& G, bool top_only, const Budget& budget) const {
        std::vector<Term> done;  // descending as collected
        while (!f.t.empty()) {
            const Term& lead = f.t.back();
            const GPoly* g = find_reducer(lead.first, G);
            if (g) {
                Cyclo c = lead.second / g->lc();
                Mono m = lead.first / g->lm();
                sub_mul(f, c, m, *g);
                budget.check_terms(f.t.size(), "groebner reduction");
            } else {
                if (top_only) break;
                done.push_back(std::move(f.t.back()));
                f.t.pop_back();
            }
        }
        std::reverse(done.begin(), done.end());
        // done terms are all larger than the remaining f terms
        f.t.insert(f.t.end(), std::make_move_iterator(done.begin()), std::make_move_iterator(done.end()));
        f.mask = f.t.empty() ? 0 : divmask(f.lm());
        return f;
    }

    void make_monic(GPoly& f) const {
        if (f.t.empty()) return;
        Cyclo inv = f.lc().inverse();
        if (inv.is_one()) return;
        for (auto& x : f.t) x.second *= inv;
    }
};

struct Pair {
    int i, j;
    Mono lcm;
    int sugar;
};

bool coprime(const Mono& a, const Mono& b) {
    for (int k = 0; k < kMaxVars; ++k)
        if (a.e[k] && b.e[k]) return false;
    return true;
}

}  // namespace

Mono leading_monomial(const MPoly& f, const MonomialOrder& ord) {
    if (f.is_zero()) throw std::domain_error("leading monomial of zero");
    const Mono* best = &f.terms()[0].first;
    for (auto& t : f.terms())
        if (ord.compare(t.first, *best) > 0) best = &t.first;
    return *best;
}

Cyclo leading_coeff(const MPoly& f, const MonomialOrder& ord) { return f.coeff(leading_monomial(f, ord)); }

std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens, const MonomialOrder& ord, const Budget& budget) {
    Ctx ctx{ord};
    RingPtr ring;
    for (auto& g : gens)
        if (g.ring()) ring = g.ring();
    std::vector<GPoly> polys;
    std::vector<bool> active;
    std::vector<Pair> pairs;

    auto add_poly = [&](GPoly h) {
        int hi = int(polys.size());
        polys.push_back(std::move(h));
        active.push_back(true);
        const GPoly& H = polys[hi];
        // Gebauer-Moeller update
        std::vector<Pair> C;
        for (int g = 0; g < hi; ++g)
            if (active[g]) {
                Mono l = Mono::lcm(H.lm(), polys[g].lm());
                int sug = std::max(H.sugar + ord.weighted_degree(l / H.lm()),
                                   polys[g].sugar + ord.weighted_degree(l / polys[g].lm()));
                C.push_back({g, hi, l, sug});
            }
        std::vector<Pair> D;
        for (size_t a = 0; a < C.size(); ++a) {
            const Pair& p = C[a];
            bool keep = coprime(H.lm(), polys[p.i].lm());
            if (!keep) {
                keep = true;
                for (size_t b = a + 1; b < C.size() && keep; ++b)
                    if (C[b].lcm.divides(p.lcm)) keep = false;
                for (auto& q : D)
                    if (keep && q.lcm.divides(p.lcm)) keep = false;
            }
            if (keep) D.push_back(p);
        }
        std::vector<Pair> E;
        for (auto& p : D)
            if (!coprime(H.lm(), polys[p.i].lm())) E.push_back(p);
        std::vector<Pair> B;
        for (auto& p : pairs) {
            bool drop = H.lm().divides(p.lcm) && Mono::lcm(polys[p.i].lm(), H.lm()) != p.lcm &&
                        Mono::lcm(polys[p.j].lm(), H.lm()) != p.lcm;
            if (!drop) B.push_back(p);
        }
        for (auto& p : E) B.push_back(p);
        pairs = std::move(B);
        for (int g = 0; g < hi; ++g)
            if (active[g] && H.lm().divides(polys[g].lm())) active[g] = false;
    };

    auto current = [&]() {
        std::vector<const GPoly*> G;
        for (size_t i = 0; i < polys.size(); ++i)
            if (active[i]) G.push_back(&polys[i]);
        return G;
    };

    // seed with the inputs, lowest sugar first
    std::vector<GPoly> init;
    for (auto& g : gens)
        if (!g.is_zero()) init.push_back(ctx.make(g));
    std::sort(init.begin(), init.end(), [&](const GPoly& a, const GPoly& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        return ctx.less(a.lm(), b.lm());
    });
    for (auto& g : init) {
        GPoly h = ctx.reduce(g, current(), false, budget);
        if (h.t.empty()) continue;
        ctx.make_monic(h);
        add_poly(std::move(h));
    }

    while (!pairs.empty()) {
        budget.check("groebner basis");
        auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.sugar != b.sugar) return a.sugar < b.sugar;
            return ctx.less(a.lcm, b.lcm);
        });
        Pair p = *it;
        pairs.erase(it);
        const GPoly& f = polys[p.i];
        const GPoly& g = polys[p.j];
        GPoly s;
        s.t.clear();
        s.sugar = 0;
        // S = (lcm/lm f) f / lc f - (lcm/lm g) g / lc g
        Mono mf = p.lcm / f.lm(), mg = p.lcm / g.lm();
        s = GPoly{};
        ctx.sub_mul(s, -(f.lc().inverse()), mf, f);
        ctx.sub_mul(s, g.lc().inverse(), mg, g);
        s.sugar = p.sugar;
        GPoly h = ctx.reduce(std::move(s), current(), false, budget);
        if (h.t.empty()) continue;
        ctx.make_monic(h);
        add_poly(std::move(h));
    }

    // reduced basis
    std::vector<GPoly> G;
    for (size_t i = 0; i < polys.size(); ++i)
        if (active[i]) G.push_back(polys[i]);
    std::vector<MPoly> out;
    for (size_t i = 0; i < G.size(); ++i) {
        std::vector<const GPoly*> others;
        for (size_t j = 0; j < G.size(); ++j)
            if (j != i) others.push_back(&G[j]);
        GPoly r = ctx.reduce(G[i], others, false, budget);
        ctx.make_monic(r);
        out.push_back(MPoly::from_terms(ring, r.t));
    }
    std::sort(out.begin(), out.end(), [&](const MPoly& a, const MPoly& b) {
        return ord.compare(leading_monomial(a, ord), leading_monomial(b, ord)) < 0;
    });
    return out;
}

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& gb, const MonomialOrder& ord) {
    Ctx ctx{ord};
    std::vector<GPoly> G;
    for (auto& g : gb) G.push_back(ctx.make(g));
    std::vector<const GPoly*> ptrs;
    for (auto& g : G) ptrs.push_back(&g);
    GPoly r = ctx.reduce(ctx.make(f), ptrs, false, Budget());
    return MPoly::from_terms(f.ring(), r.t);
}

std::vector<MPoly> eliminate(const std::vector<MPoly>& gb, int eliminated) {
    std::vector<MPoly> out;
    for (auto& g : gb) {
        bool ok = true;
        for (int v = 0; v < eliminated && ok; ++v)
            if (g.involves(v)) ok = false;
        if (ok) out.push_back(g);
    }
    return out;
}

std::vector<MPoly> minimal_generators(std::vector<MPoly> gens, const MonomialOrder& ord, const Budget& budget) {
    std::erase_if(gens, [](const MPoly& f) { return f.is_zero(); });
    std::stable_sort(gens.begin(), gens.end(), [&](const MPoly& a, const MPoly& b) {
        return ord.weighted_degree(leading_monomial(a, ord)) < ord.weighted_degree(leading_monomial(b, ord));
    });
    std::vector<MPoly> kept, gb;
    for (auto& f : gens) {
        budget.check("minimal_generators");
        if (!gb.empty() && normal_form(f, gb, ord).is_zero()) continue;
        kept.push_back(f);
        gb = groebner_basis(kept, ord, budget);
    }
    return kept;
}

std::vector<MPoly> algebra_map_kernel(const std::vector<MPoly>& images, const RingPtr& z_ring, const Budget& budget) {
    if (images.empty()) return {};
    const RingPtr& src = images[0].ring();
    if (int(images.size()) != z_ring->nvars()) throw std::invalid_argument("algebra_map_kernel: ring size mismatch");
    int ns = src->nvars(), nz = z_ring->nvars();
    if (ns + nz > kMaxVars) throw std::invalid_argument("algebra_map_kernel: too many variables");
    std::vector<std::string> names;
    for (auto& n : src->names()) names.push_back("_s" + n);
    for (auto& n : z_ring->names()) names.push_back(n);
    auto big = make_ring(names);
    std::vector<int> smap(ns), zmap(nz);
    for (int i = 0; i < ns; ++i) smap[i] = i;
    for (int i = 0; i < nz; ++i) zmap[i] = ns + i;
    std::vector<int> weights(ns + nz, 1);
    std::vector<MPoly> ideal;
    for (int i = 0; i < nz; ++i) {
        weights[ns + i] = std::max(1, images[i].total_degree());
        ideal.push_back(MPoly::var(big, ns + i) - images[i].rehome(big, smap));
    }
    auto gb = groebner_basis(ideal, MonomialOrder::block({ns, nz}, weights), budget);
    std::vector<int> back(ns + nz, 0);
    for (int i = 0; i < nz; ++i) back[ns + i] = i;
    std::vector<MPoly> ker;
    for (auto& g : eliminate(gb, ns)) ker.push_back(g.rehome(z_ring, back));
    std::vector<int> zw(weights.begin() + ns, weights.end());
    return minimal_generators(ker, MonomialOrder::grevlex(nz, zw), budget);
}

}  // namespace cmx
