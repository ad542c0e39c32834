#include "cmx/center.hpp"

#include "cmx/groebner.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cmx {

namespace {

using u64 = uint64_t;
using ModPoly = std::unordered_map<Mono, u64, MonoHash>;

// 1 / det(1 - q M) as a power series through degree `bound`
std::vector<Cyclo> inverse_det_series(const Mat& m, int bound) {
    auto cp = m.charpoly();  // det(lambda - M), ascending
    int n = m.rows();
    std::vector<Cyclo> d(n + 1);
    for (int k = 0; k <= n; ++k) d[k] = cp[n - k];
    std::vector<Cyclo> s(bound + 1);
    s[0] = Cyclo(1);
    for (int j = 1; j <= bound; ++j) {
        Cyclo acc;
        for (int k = 1; k <= std::min(j, n); ++k) acc -= d[k] * s[j - k];
        s[j] = acc;
    }
    return s;
}

void enumerate_exponents(int nvars, int deg, std::vector<int>& cur, const std::function<void()>& emit, int i = 0) {
    if (i == nvars - 1) {
        cur[i] = deg;
        emit();
        return;
    }
    for (int e = deg; e >= 0; --e) {
        cur[i] = e;
        enumerate_exponents(nvars, deg - e, cur, emit, i + 1);
    }
}

// x,y monomials of bidegree (a, b) in the algebra ring
std::vector<Mono> xy_monomials(const Algebra& A, Bideg bd) {
    int n = A.rank();
    std::vector<Mono> out;
    std::vector<int> ex(n), ey(n);
    enumerate_exponents(n, bd.first, ex, [&] {
        enumerate_exponents(n, bd.second, ey, [&] {
            Mono m;
            for (int i = 0; i < n; ++i) {
                m.e[A.x_var(i)] = uint8_t(ex[i]);
                m.e[A.y_var(i)] = uint8_t(ey[i]);
            }
            out.push_back(m);
        });
    });
    return out;
}

ModPoly to_mod(const PrimeField& F, const MPoly& f) {
    ModPoly r;
    for (auto& [m, c] : f.terms()) r[m] = F.map(c);
    return r;
}

ModPoly mod_mul(const PrimeField& F, const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    for (auto& [ma, ca] : a)
        for (auto& [mb, cb] : b) {
            u64& slot = r[ma * mb];
            slot = F.add(slot, F.mul(ca, cb));
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

std::vector<u64> dense(const ModPoly& f, const std::map<Mono, int>& index) {
    std::vector<u64> v(index.size(), 0);
    for (auto& [m, c] : f) {
        auto it = index.find(m);
        if (it == index.end()) throw std::logic_error("invariants: term outside bidegree");
        v[it->second] = c;
    }
    return v;
}

MPoly reynolds(const Algebra& A, const MPoly& f) {
    const auto& G = A.group();
    MPolyBuilder b(A.ring());
    for (int w = 0; w < G.order(); ++w) b.add(A.act(w, f));
    return b.build() * Cyclo(1, G.order());
}

}  // namespace

std::map<Bideg, long> molien_series(const ReflectionGroup& g, int bound) {
    std::vector<Cyclo> acc(size_t(bound + 1) * (bound + 1));
    for (int w = 0; w < g.order(); ++w) {
        auto sy = inverse_det_series(g.elem(w), bound);
        auto sx = inverse_det_series(g.elem(g.inv(w)), bound);
        for (int a = 0; a <= bound; ++a)
            if (!sx[a].is_zero())
                for (int b = 0; a + b <= bound; ++b) acc[size_t(a) * (bound + 1) + b] += sx[a] * sy[b];
    }
    std::map<Bideg, long> out;
    for (int a = 0; a <= bound; ++a)
        for (int b = 0; a + b <= bound; ++b) {
            Q v = (acc[size_t(a) * (bound + 1) + b] / Cyclo(long(g.order()))).rational();
            if (v.get_den() != 1) throw std::logic_error("molien: non-integral coefficient");
            out[{a, b}] = v.get_num().get_si();
        }
    return out;
}

InvariantSystem fundamental_invariants(const AlgPtr& ap, int degree_bound, const Budget& budget) {
    const Algebra& A = *ap;
    const auto& G = A.group();
    InvariantSystem sys;
    sys.degree_bound = degree_bound > 0 ? degree_bound : G.order();
    int bound = sys.degree_bound;
    sys.molien = molien_series(G, bound);
    PrimeField F(G.conductor());
    std::map<Bideg, std::vector<ModPoly>> basis;
    std::vector<ModPoly> gen_mod;
    basis[{0, 0}] = {ModPoly{{Mono(), 1}}};

    for (int total = 1; total <= bound; ++total)
        for (int a = 0; a <= total; ++a) {
            budget.check("fundamental_invariants");
            Bideg bd{a, total - a};
            long dim = sys.molien.at(bd);
            if (dim == 0) continue;
            auto monos = xy_monomials(A, bd);
            std::map<Mono, int> index;
            for (size_t i = 0; i < monos.size(); ++i) index[monos[i]] = int(i);
            ModEchelon ech(F, monos.size());
            std::vector<ModPoly> kept;
            for (size_t g = 0; g < sys.gens.size() && long(ech.rank()) < dim; ++g) {
                Bideg rest{a - sys.bidegrees[g].first, bd.second - sys.bidegrees[g].second};
                auto it = basis.find(rest);
                if (rest.first < 0 || rest.second < 0 || it == basis.end()) continue;
                for (auto& h : it->second) {
                    auto p = mod_mul(F, gen_mod[g], h);
                    if (ech.add(dense(p, index))) kept.push_back(std::move(p));
                    if (long(ech.rank()) == dim) break;
                }
            }
            for (size_t i = 0; i < monos.size() && long(ech.rank()) < dim; ++i) {
                MPoly r = reynolds(A, MPoly::monomial(A.ring(), monos[i]));
                if (r.is_zero()) continue;
                auto p = to_mod(F, r);
                if (!ech.add(dense(p, index))) continue;
                r *= r.terms().back().second.inverse();
                p = to_mod(F, r);
                sys.gens.push_back(r);
                sys.bidegrees.push_back(bd);
                gen_mod.push_back(p);
                kept.push_back(std::move(p));
            }
            if (long(ech.rank()) != dim)
                throw InvariantError("invariant space of bidegree (" + std::to_string(bd.first) + "," +
                                     std::to_string(bd.second) + ") not reached by averaging");
            basis[bd] = std::move(kept);
        }

    // 2n algebraically independent generators: Jacobian of full rank at a random point
    int nv = 2 * A.rank();
    std::mt19937_64 rng(0x5eed);
    std::vector<u64> point(A.ring()->nvars(), 0);
    for (int i = 0; i < A.rank(); ++i) {
        point[A.x_var(i)] = rng() % F.p();
        point[A.y_var(i)] = rng() % F.p();
    }
    std::vector<std::vector<u64>> jac;
    for (auto& g : gen_mod) {
        std::vector<u64> row(nv, 0);
        for (auto& [m, c] : g)
            for (int k = 0; k < nv; ++k) {
                int v = k < A.rank() ? A.x_var(k) : A.y_var(k - A.rank());
                if (!m.e[v]) continue;
                u64 val = F.mul(c, m.e[v]);
                for (int u = 0; u < kMaxVars; ++u) {
                    int e = m.e[u] - (u == v ? 1 : 0);
                    if (e > 0) val = F.mul(val, F.pow(point[u], e));
                }
                row[k] = F.add(row[k], val);
            }
        jac.push_back(std::move(row));
    }
    if (int(mod_rank(F, jac)) < nv)
        throw InvariantError("bound insufficient: generators through total degree " + std::to_string(bound) +
                             " have fewer than " + std::to_string(nv) +
                             " independent members; first unchecked bidegree (0," + std::to_string(bound + 1) + ")");
    return sys;
}

// ---------------------------------------------------------------- Center

Center::Center(AlgPtr a, CenterOptions opt) : Center(a, fundamental_invariants(a, opt.degree_bound, opt.budget), opt) {}

Center::Center(AlgPtr a, InvariantSystem inv, CenterOptions opt) : a_(std::move(a)), opt_(opt), inv_(std::move(inv)) {
    std::vector<std::string> names = a_->group().c_names();
    std::vector<Bideg> bd(names.size(), {1, 1});
    for (size_t i = 0; i < inv_.gens.size(); ++i) {
        names.push_back("z" + std::to_string(i + 1));
        bd.push_back(inv_.bidegrees[i]);
    }
    zring_ = make_ring(names, bd);
    build_generators();
}

void Center::build_generators() {
    int m = int(inv_.gens.size());
    gens_.assign(m, PBW(a_));
    TruncOptions to{opt_.seed, opt_.parallel, opt_.budget};
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (opt_.parallel)
    for (int i = 0; i < m; ++i) {
        try {
            gens_[i] = trunc_inverse_serial(a_, inv_.gens[i], to);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

std::vector<Mono> Center::z_monomials(Bideg b) const {
    std::vector<Mono> out;
    int m = num_generators();
    Mono cur;
    std::function<void(int, int, int)> rec = [&](int i, int ra, int rb) {
        if (ra == 0 && rb == 0) {
            out.push_back(cur);
            return;
        }
        if (i == m) return;
        auto [ga, gb] = inv_.bidegrees[i];
        for (int k = 0; ra - k * ga >= 0 && rb - k * gb >= 0; ++k) {
            cur.e[z_var(i)] = uint8_t(k);
            rec(i + 1, ra - k * ga, rb - k * gb);
        }
        cur.e[z_var(i)] = 0;
    };
    rec(0, b.first, b.second);
    std::sort(out.begin(), out.end());
    return out;
}

MPoly Center::expand0(const Mono& m) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = prod0_.find(m);
        if (it != prod0_.end()) return it->second;
    }
    MPoly r;
    int i = 0;
    while (i < num_generators() && !m.e[z_var(i)]) ++i;
    if (i == num_generators()) {
        r = a_->constant(Cyclo(1));
    } else {
        Mono rest = m;
        --rest.e[z_var(i)];
        r = expand0(rest) * inv_.gens[i];
    }
    std::lock_guard<std::mutex> lk(mu_);
    prod0_.emplace(m, r);
    return r;
}

PBW Center::expand(const Mono& m) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = prod_.find(m);
        if (it != prod_.end()) return it->second;
    }
    PBW r;
    int i = 0;
    while (i < num_generators() && !m.e[z_var(i)]) ++i;
    if (i == num_generators()) {
        r = PBW::from_poly(a_, a_->constant(Cyclo(1)));
    } else {
        Mono rest = m;
        --rest.e[z_var(i)];
        r = mul(expand(rest), gens_[i], TMode::Zero, opt_.budget);
    }
    std::lock_guard<std::mutex> lk(mu_);
    prod_.emplace(m, r);
    return r;
}

PBW Center::pi(const MPoly& F) const {
    PBW out(a_);
    std::vector<bool> cmask(zring_->nvars(), false);
    for (int k = 0; k < a_->num_c(); ++k) cmask[k] = true;
    for (auto& [cm, zpart] : F.split(cmask)) {
        MPoly cpoly = MPoly::monomial(a_->ring(), cm);
        PBW acc(a_);
        for (auto& [zm, c] : zpart.terms()) {
            PBW e = expand(zm);
            acc += e.scale(a_->constant(c));
        }
        out += acc.scale(cpoly);
    }
    return out;
}

std::shared_ptr<const Center::Solver> Center::solver(Bideg b) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = solvers_.find(b);
        if (it != solvers_.end()) return it->second;
    }
    auto s = std::make_shared<Solver>();
    auto rows = xy_monomials(*a_, b);
    std::map<Mono, int> index;
    for (size_t i = 0; i < rows.size(); ++i) index[rows[i]] = int(i);
    PrimeField F(a_->group().conductor());
    ModEchelon cols(F, rows.size());
    std::vector<std::vector<u64>> chosen;
    for (auto& zm : z_monomials(b)) {
        auto v = dense(to_mod(F, expand0(zm)), index);
        if (cols.add(v)) {
            s->cols.push_back(zm);
            chosen.push_back(std::move(v));
        }
    }
    auto it = inv_.molien.find(b);
    if (it != inv_.molien.end() && long(s->cols.size()) != it->second)
        throw InvariantError("products of generators do not span the invariants in bidegree (" +
                             std::to_string(b.first) + "," + std::to_string(b.second) + ")");
    size_t r = s->cols.size();
    ModEchelon rsel(F, r);
    std::vector<int> rowsel;
    for (size_t i = 0; i < rows.size() && rsel.rank() < r; ++i) {
        std::vector<u64> v(r);
        for (size_t k = 0; k < r; ++k) v[k] = chosen[k][i];
        if (rsel.add(v)) rowsel.push_back(int(i));
    }
    Mat M{int(r), int(r)};
    for (size_t k = 0; k < r; ++k) {
        MPoly e = expand0(s->cols[k]);
        for (size_t i = 0; i < r; ++i) M(int(i), int(k)) = e.coeff(rows[rowsel[i]]);
    }
    for (int i : rowsel) s->rows.push_back(rows[i]);
    s->inverse = r ? M.inverse() : Mat();
    std::lock_guard<std::mutex> lk(mu_);
    solvers_.emplace(b, s);
    return s;
}

MPoly Center::preimage0(const MPoly& f0) const {
    MPoly f = to_algebra(*a_, f0);
    MPoly out(zring_);
    if (f.is_zero()) return out;
    for (int v = 0; v < a_->ring()->nvars(); ++v)
        if (!a_->xy_mask()[v] && f.involves(v)) throw std::invalid_argument("preimage0: expected a polynomial in x and y");
    for (auto bd : f.bidegrees()) {
        MPoly part = f.bihomogeneous_part(bd.first, bd.second);
        if (bd == Bideg{0, 0}) {
            out += MPoly(zring_, part.constant_term());
            continue;
        }
        auto s = solver(bd);
        size_t r = s->cols.size();
        std::vector<Cyclo> rhs(r);
        for (size_t i = 0; i < r; ++i) rhs[i] = part.coeff(s->rows[i]);
        auto sol = s->inverse.apply(rhs);
        MPolyBuilder check(a_->ring());
        for (size_t k = 0; k < r; ++k) {
            if (sol[k].is_zero()) continue;
            out += MPoly::monomial(zring_, s->cols[k], sol[k]);
            check.add(expand0(s->cols[k]), sol[k]);
        }
        if (!(check.build() == part))
            throw InvariantError("linear solve infeasible: input is not a polynomial in the fundamental invariants");
    }
    return out;
}

MPoly Center::preimage_trunc(const MPoly& f0) const {
    MPoly f = to_algebra(*a_, f0);
    MPoly out(zring_);
    if (f.is_zero()) return out;
    if (f.involves(a_->t_var())) throw std::invalid_argument("preimage: input involves t");
    for (auto& [cm, g] : f.split(a_->c_mask())) {
        MPoly F0 = preimage0(g);
        MPoly D = pi(F0).trunc() - g;
        for (auto& [m, c] : D.terms()) {
            bool has_c = false;
            for (int k = 0; k < a_->num_c(); ++k) has_c |= m.e[a_->c_var(k)] > 0;
            if (!has_c) throw std::logic_error("preimage: correction term without parameter factor");
        }
        MPoly P = F0 - preimage_trunc(D);
        out += P.mul_mono(cm, Cyclo(1));
    }
    return out;
}

MPoly Center::preimage(const PBW& z) const {
    if (!is_central(z)) throw std::invalid_argument("preimage: element is not central");
    MPoly F = preimage_trunc(z.trunc());
    if (!(pi(F) == z)) throw std::logic_error("preimage: re-expansion mismatch");
    return F;
}

std::map<int, PBW> Center::split_C0_multiple(const PBW& u) const {
    std::map<int, PBW> out;
    std::map<int, MPolyBuilder> parts;
    MPoly T = u.trunc();
    for (auto& [m, c] : T.terms()) {
        int s = -1;
        for (int k = 0; k < a_->num_c() && s < 0; ++k)
            if (m.e[a_->c_var(k)]) s = k;
        if (s < 0) throw std::invalid_argument("split_C0_multiple: truncation has a parameter-free term");
        Mono rest = m;
        --rest.e[a_->c_var(s)];
        parts.try_emplace(s, a_->ring()).first->second.add(rest, c);
    }
    TruncOptions to{opt_.seed, opt_.parallel, opt_.budget};
    for (auto& [s, b] : parts) {
        MPoly g = b.build();
        if (g.is_zero()) continue;
        PBW h(a_);
        for (auto bd : g.bidegrees()) h += trunc_inverse(a_, g.bihomogeneous_part(bd.first, bd.second), to);
        out.emplace(s, std::move(h));
    }
    return out;
}

std::vector<MPoly> Center::kernel0() const {
    int n = a_->rank(), m = num_generators();
    std::vector<std::string> xy;
    for (int i = 0; i < n; ++i) xy.push_back(a_->ring()->name(a_->x_var(i)));
    for (int i = 0; i < n; ++i) xy.push_back(a_->ring()->name(a_->y_var(i)));
    auto xyring = make_ring(xy);
    std::vector<int> to_xy(a_->ring()->nvars(), -1);
    for (int i = 0; i < n; ++i) {
        to_xy[a_->x_var(i)] = i;
        to_xy[a_->y_var(i)] = n + i;
    }
    std::vector<MPoly> images;
    std::vector<std::string> zn;
    for (int i = 0; i < m; ++i) {
        images.push_back(inv_.gens[i].rehome(xyring, to_xy));
        zn.push_back(zring_->name(z_var(i)));
    }
    auto zonly = make_ring(zn);
    std::vector<int> back(m);
    for (int i = 0; i < m; ++i) back[i] = z_var(i);
    std::vector<MPoly> out;
    for (auto& r : algebra_map_kernel(images, zonly, opt_.budget)) {
        MPoly p = r.rehome(zring_, back);
        out.push_back(p * p.terms().back().second.inverse());
    }
    return out;
}

CenterPresentation Center::presentation() const {
    CenterPresentation P;
    P.gens = gens_;
    P.gen_bidegrees = inv_.bidegrees;
    P.relations0 = kernel0();
    P.relations.resize(P.relations0.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (opt_.parallel)
    for (int j = 0; j < int(P.relations0.size()); ++j) {
        try {
            const MPoly& r0 = P.relations0[j];
            MPoly rho = r0 - preimage_trunc(pi(r0).trunc());
            if (!pi(rho).is_zero()) throw std::logic_error("presentation: lifted relation does not vanish");
            P.relations[j] = rho;
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    for (auto& r : P.relations) P.rel_bidegrees.push_back(r.bidegrees().front());
    return P;
}

std::map<Bideg, long> Center::hilbert_function(const std::vector<MPoly>& relations0, int bound) const {
    std::vector<int> w(zring_->nvars());
    for (int v = 0; v < zring_->nvars(); ++v) w[v] = std::max(1, zring_->bideg(v).first + zring_->bideg(v).second);
    auto ord = MonomialOrder::grevlex(zring_->nvars(), w);
    auto gb = groebner_basis(relations0, ord, opt_.budget);
    std::vector<Mono> lead;
    for (auto& g : gb) lead.push_back(leading_monomial(g, ord));
    std::map<Bideg, long> out;
    for (int total = 0; total <= bound; ++total)
        for (int a = 0; a <= total; ++a) {
            long cnt = 0;
            for (auto& m : z_monomials({a, total - a})) {
                bool std_mono = true;
                for (auto& l : lead)
                    if (l.divides(m)) {
                        std_mono = false;
                        break;
                    }
                cnt += std_mono;
            }
            out[{a, total - a}] = cnt;
        }
    return out;
}

PBW Center::poisson_bracket(const PBW& x, const PBW& y) const {
    if (!is_central(x) || !is_central(y)) throw std::invalid_argument("poisson_bracket: non-central input");
    PBW c = commutator(x, y, TMode::Generic, opt_.budget);
    PBW out(a_);
    int tv = a_->t_var();
    int order = a_->group().order();
    for (int w = 0; w < order; ++w) {
        MPolyBuilder b(a_->ring());
        for (auto& [m, co] : c.coeff(w).terms()) {
            if (m.e[tv] == 0) throw NotDivisible("poisson_bracket: commutator not divisible by t");
            if (m.e[tv] != 1) continue;
            Mono r = m;
            r.e[tv] = 0;
            b.add(r, co);
        }
        out.coeff(w) = b.build();
    }
    return out;
}

std::vector<std::vector<MPoly>> Center::poisson_matrix() const {
    int m = num_generators();
    std::vector<std::vector<MPoly>> M(m, std::vector<MPoly>(m, MPoly(zring_)));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.push_back({i, j});
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (opt_.parallel)
    for (int k = 0; k < int(pairs.size()); ++k) {
        try {
            auto [i, j] = pairs[k];
            M[i][j] = preimage(poisson_bracket(gens_[i], gens_[j]));
            M[j][i] = -M[i][j];
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return M;
}

}  // namespace cmx
