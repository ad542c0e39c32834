#include "cmx/cherednik.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

namespace cmx {

bool MonoMemo::find(int i, const Mono& m, MPoly& out) const {
    std::shared_lock lock(mu_);
    auto it = map_.find({i, m});
    if (it == map_.end()) return false;
    out = it->second;
    return true;
}

void MonoMemo::insert(int i, const Mono& m, const MPoly& v) {
    std::unique_lock lock(mu_);
    map_.emplace(std::make_pair(i, m), v);
}

size_t MonoMemo::size() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

Algebra::Algebra(GroupPtr g) : g_(std::move(g)) {
    int n = g_->dim(), r = g_->num_c();
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> bideg;
    for (auto& c : g_->c_names()) {
        names.push_back(c);
        bideg.push_back({1, 1});
    }
    for (int i = 0; i < n; ++i) {
        names.push_back("x" + std::to_string(i + 1));
        bideg.push_back({1, 0});
    }
    for (int j = 0; j < n; ++j) {
        names.push_back("y" + std::to_string(j + 1));
        bideg.push_back({0, 1});
    }
    names.push_back("t");
    bideg.push_back({1, 1});
    ring_ = make_ring(names, bideg);
    int nv = ring_->nvars();
    x_mask_.assign(nv, false);
    y_mask_.assign(nv, false);
    c_mask_.assign(nv, false);
    for (int i = 0; i < n; ++i) {
        x_mask_[r + i] = true;
        y_mask_[r + n + i] = true;
    }
    for (int k = 0; k < r; ++k) c_mask_[k] = true;
    xy_mask_.resize(nv);
    for (int v = 0; v < nv; ++v) xy_mask_[v] = x_mask_[v] || y_mask_[v];

    img_.resize(g_->order());
    for (int w = 0; w < g_->order(); ++w) {
        const Mat& m = g_->elem(w);
        const Mat& mi = g_->elem(g_->inv(w));
        auto& im = img_[w];
        im.assign(nv, MPoly(ring_));
        for (int i = 0; i < n; ++i) {
            MPolyBuilder bx(ring_), by(ring_);
            for (int j = 0; j < n; ++j) {
                bx.add(Mono::var(x_var(j)), mi(i, j));
                by.add(Mono::var(y_var(j)), m(j, i));
            }
            im[x_var(i)] = bx.build();
            im[y_var(i)] = by.build();
        }
    }
}

Algebra::Algebra(GroupPtr g, std::vector<MPoly> values) : Algebra(std::move(g)) {
    if (int(values.size()) != num_c()) throw std::invalid_argument("specialize: wrong number of images");
    for (auto& v : values) {
        MPoly p = to_algebra(*this, v);
        for (int u = 0; u < ring_->nvars(); ++u)
            if (!c_mask_[u] && p.involves(u)) throw std::invalid_argument("specialize: image involves non-parameter variables");
        c_value_.push_back(p);
    }
}

AlgPtr make_algebra(GroupPtr g) { return std::make_shared<const Algebra>(std::move(g)); }

AlgPtr make_specialized_algebra(const AlgPtr& a, const std::vector<MPoly>& values) {
    if (a->is_specialized()) throw std::invalid_argument("specialize: algebra already specialized");
    return std::make_shared<const Algebra>(a->group_ptr(), values);
}

std::pair<int, int> Algebra::xy_degree(const Mono& m) const {
    int a = 0, b = 0;
    for (int i = 0; i < rank(); ++i) {
        a += m.e[x_var(i)];
        b += m.e[y_var(i)];
    }
    return {a, b};
}

MPoly Algebra::act_mono(int w, const Mono& m) const {
    if (m.is_one()) return constant(Cyclo(1));
    MPoly out;
    if (act_memo_.find(w, m, out)) return out;
    int v = 0;
    while (!m.e[v]) ++v;
    Mono rest = m / Mono::var(v);
    out = act_mono(w, rest) * img_[w][v];
    act_memo_.insert(w, m, out);
    return out;
}

MPoly Algebra::act(int w, const MPoly& f) const {
    if (w == 0) return f;
    MPolyBuilder b(ring_);
    for (auto& [m, c] : f.terms()) {
        Mono xy, rest = m;
        for (int v = 0; v < ring_->nvars(); ++v)
            if (xy_mask_[v]) {
                xy.e[v] = m.e[v];
                rest.e[v] = 0;
            }
        b.add_product(act_mono(w, xy), rest, c);
    }
    return b.build();
}

bool Algebra::is_invariant(const MPoly& f) const {
    for (auto& gen : g_->spec().generators)
        if (!(act(g_->index_of(gen), f) == f)) return false;
    return true;
}

MPoly Algebra::delta_mono(int r, const Mono& m) const {
    MPoly out;
    if (delta_memo_.find(r, m, out)) return out;
    const Reflection& s = g_->reflections()[r];
    int n = rank();
    Mono xa, yb;
    for (int i = 0; i < n; ++i) {
        xa.e[x_var(i)] = m.e[x_var(i)];
        yb.e[y_var(i)] = m.e[y_var(i)];
    }
    // s(x_i) = x_i - lambda_i alpha, expand prod (x_i - lambda_i T)^{a_i} in T
    Cyclo scale = (Cyclo(1) - s.eps.inverse()) / ReflectionGroup::pair(s.root, s.coroot);
    std::vector<MPoly> P{constant(Cyclo(1))};
    for (int i = 0; i < n; ++i) {
        int a = xa.e[x_var(i)];
        if (!a) continue;
        Cyclo lam = scale * s.coroot[i];
        std::vector<MPoly> factor;  // coefficients of (x_i - lam T)^a
        Cyclo binom(1);
        for (int k = 0; k <= a; ++k) {
            Cyclo c = binom * (-lam).pow(k);
            factor.push_back(MPoly::monomial(ring_, Mono::var(x_var(i), a - k), c));
            binom = binom * Cyclo(long(a - k)) / Cyclo(long(k + 1));
        }
        std::vector<MPoly> next(P.size() + factor.size() - 1, zero());
        for (size_t p = 0; p < P.size(); ++p)
            for (size_t q = 0; q < factor.size(); ++q)
                if (!P[p].is_zero() && !factor[q].is_zero()) next[p + q] += P[p] * factor[q];
        P = std::move(next);
    }
    MPolyBuilder ab(ring_);
    for (int i = 0; i < n; ++i) ab.add(Mono::var(x_var(i)), s.root[i]);
    MPoly alpha = ab.build();
    // Delta = -sum_{k>=1} P_k alpha^{k-1}, by Horner
    MPoly d = zero();
    for (size_t k = P.size(); k-- > 1;) d = d * alpha + P[k];
    d = -d;
    out = d * act_mono(s.elem, yb);
    delta_memo_.insert(r, m, out);
    return out;
}

MPoly Algebra::delta(int r, const MPoly& f) const {
    MPolyBuilder b(ring_);
    for (auto& [m, c] : f.terms()) {
        Mono xy, rest = m;
        for (int v = 0; v < ring_->nvars(); ++v)
            if (xy_mask_[v]) {
                xy.e[v] = m.e[v];
                rest.e[v] = 0;
            }
        b.add_product(delta_mono(r, xy), rest, c);
    }
    return b.build();
}

MPoly Algebra::y_form(const std::vector<Cyclo>& v) const {
    MPolyBuilder b(ring_);
    for (int j = 0; j < rank(); ++j) b.add(Mono::var(y_var(j)), v[j]);
    return b.build();
}

MPoly to_algebra(const Algebra& a, const MPoly& f) {
    if (!f.ring() || f.ring() == a.ring()) return f.ring() ? f : a.constant(f.constant_term());
    std::vector<int> map;
    for (auto& n : f.ring()->names()) {
        int i = a.ring()->index(n);
        if (i < 0) throw std::invalid_argument("variable " + n + " not in the algebra");
        map.push_back(i);
    }
    return f.rehome(a.ring(), map);
}

// ---------------------------------------------------------------------------

PBW::PBW(AlgPtr a) : a_(std::move(a)), c_(a_->group().order(), MPoly(a_->ring())) {}

PBW PBW::from_poly(AlgPtr a, const MPoly& f) {
    PBW p(a);
    p.c_[0] = to_algebra(*a, f);
    return p;
}

PBW PBW::group_element(AlgPtr a, int w) {
    PBW p(a);
    p.c_[w] = a->constant(Cyclo(1));
    return p;
}

int PBW::support_size() const {
    int n = 0;
    for (auto& c : c_) n += !c.is_zero();
    return n;
}

bool PBW::is_zero() const { return support_size() == 0; }

size_t PBW::num_terms() const {
    size_t n = 0;
    for (auto& c : c_) n += c.size();
    return n;
}

PBW& PBW::operator+=(const PBW& o) {
    if (!a_) return *this = o;
    if (!o.a_) return *this;
    for (size_t w = 0; w < c_.size(); ++w)
        if (!o.c_[w].is_zero()) c_[w] += o.c_[w];
    return *this;
}

PBW& PBW::operator-=(const PBW& o) {
    if (!o.a_) return *this;
    if (!a_) return *this = -o;
    for (size_t w = 0; w < c_.size(); ++w)
        if (!o.c_[w].is_zero()) c_[w] -= o.c_[w];
    return *this;
}

PBW PBW::operator-() const {
    PBW r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

PBW PBW::scale(const MPoly& f) const {
    for (int v = 0; v < a_->ring()->nvars(); ++v)
        if (a_->y_mask()[v] && f.involves(v)) throw std::invalid_argument("scale: factor involves y");
    PBW r(a_);
    MPoly g = to_algebra(*a_, f);
    for (size_t w = 0; w < c_.size(); ++w)
        if (!c_[w].is_zero()) r.c_[w] = g * c_[w];
    return r;
}

PBW PBW::left_mul_group(int w) const {
    PBW r(a_);
    const auto& G = a_->group();
    for (size_t v = 0; v < c_.size(); ++v)
        if (!c_[v].is_zero()) r.c_[G.mul(w, int(v))] = a_->act(w, c_[v]);
    return r;
}

PBW PBW::left_mul_y(int j, TMode mode) const {
    const Algebra& A = *a_;
    const auto& G = A.group();
    std::vector<MPolyBuilder> out(c_.size(), MPolyBuilder(A.ring()));
    MPoly yj = A.y(j);
    for (size_t v = 0; v < c_.size(); ++v) {
        const MPoly& h = c_[v];
        if (h.is_zero()) continue;
        out[v].add(yj * h);
        if (mode == TMode::Generic) out[v].add(A.t() * h.derivative(A.x_var(j)));
        for (int r = 0; r < int(G.reflections().size()); ++r) {
            const Reflection& s = G.reflections()[r];
            if (s.root[j].is_zero()) continue;
            Cyclo coef = s.eps * s.root[j];
            MPoly d = A.delta(r, h);
            if (d.is_zero()) continue;
            if (A.is_specialized()) out[G.mul(s.elem, int(v))].add(A.c_value(s.cls) * d, coef);
            else out[G.mul(s.elem, int(v))].add_product(d, Mono::var(A.c_var(s.cls)), coef);
        }
    }
    PBW res(a_);
    for (size_t w = 0; w < c_.size(); ++w) res.c_[w] = out[w].build();
    return res;
}

std::vector<std::pair<int, int>> PBW::bidegrees() const {
    std::set<std::pair<int, int>> s;
    for (auto& c : c_)
        for (auto& b : c.bidegrees()) s.insert(b);
    return {s.begin(), s.end()};
}

std::string PBW::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (size_t w = 0; w < c_.size(); ++w) {
        if (c_[w].is_zero()) continue;
        if (!first) os << ", ";
        first = false;
        os << w << ": " << c_[w].str();
    }
    os << "}";
    return os.str();
}

PBW mul(const PBW& a, const PBW& b, TMode mode, const Budget& budget) {
    if (!a.algebra()) return a;
    if (!b.algebra()) return b;
    if (a.algebra() != b.algebra()) throw std::invalid_argument("mul: elements of different algebras");
    const AlgPtr& A = a.algebra();
    const auto& G = A->group();
    int n = G.order();
    std::vector<MPolyBuilder> out(n, MPolyBuilder(A->ring()));
    for (int u = 0; u < n; ++u) {
        const MPoly& au = a.coeff(u);
        if (au.is_zero()) continue;
        std::map<Mono, PBW> ypow;
        ypow.emplace(Mono(), b.left_mul_group(u));
        std::function<const PBW&(const Mono&)> get = [&](const Mono& beta) -> const PBW& {
            auto it = ypow.find(beta);
            if (it != ypow.end()) return it->second;
            int v = 0;
            while (!beta.e[v]) ++v;
            PBW r = get(beta / Mono::var(v)).left_mul_y(v - A->y_var(0), mode);
            budget.check_terms(r.num_terms(), "algebra multiplication");
            return ypow.emplace(beta, std::move(r)).first->second;
        };
        for (auto& [beta, P] : au.split(A->y_mask())) {
            const PBW& yb = get(beta);
            for (int v = 0; v < n; ++v)
                if (!yb.coeff(v).is_zero()) out[v].add(P * yb.coeff(v));
        }
    }
    PBW r(A);
    for (int v = 0; v < n; ++v) r.coeff(v) = out[v].build();
    return r;
}

PBW commutator(const PBW& a, const PBW& b, TMode mode, const Budget& budget) {
    return mul(a, b, mode, budget) - mul(b, a, mode, budget);
}

PBW euler(const AlgPtr& a) {
    PBW e(a);
    MPoly s = a->zero();
    for (int j = 0; j < a->rank(); ++j) s += a->x(j) * a->y(j);
    e.coeff(0) = s;
    for (auto& r : a->group().reflections()) e.coeff(r.elem) = a->c_value(r.cls) * r.eps;
    return e;
}

bool is_central(const PBW& z, TMode mode) {
    const AlgPtr& A = z.algebra();
    std::vector<PBW> gens;
    for (int i = 0; i < A->rank(); ++i) {
        gens.push_back(PBW::from_poly(A, A->x(i)));
        gens.push_back(PBW::from_poly(A, A->y(i)));
    }
    for (auto& g : A->group().spec().generators) gens.push_back(PBW::group_element(A, A->group().index_of(g)));
    for (auto& g : gens)
        if (!commutator(g, z, mode).is_zero()) return false;
    return true;
}

namespace {

PBW trunc_inverse_impl(const AlgPtr& A, const MPoly& f0, const TruncOptions& opt, bool parallel) {
    const auto& G = A->group();
    MPoly f = to_algebra(*A, f0);
    PBW z(A);
    if (f.is_zero()) return z;
    if (f.involves(A->t_var())) throw std::invalid_argument("trunc_inverse: input involves t");
    auto bd = f.bidegrees();
    if (bd.size() != 1) throw std::invalid_argument("trunc_inverse: input not bi-homogeneous");
    if (!A->is_invariant(f)) throw std::invalid_argument("trunc_inverse: input not invariant");
    int delta = std::min(bd[0].first, bd[0].second);
    int n = G.order();
    auto yreg = G.regular_vector(opt.seed);
    MPoly Y = A->y_form(yreg);
    std::vector<MPoly> div(n);
    for (int w = 1; w < n; ++w) div[w] = Y - A->act(w, Y);
    std::vector<Cyclo> coef;
    for (auto& s : G.reflections()) coef.push_back(-(s.eps * ReflectionGroup::pair(s.root, yreg)));

    std::vector<MPoly> cur(n, A->zero()), next;
    cur[0] = f;
    for (int round = 0; round < delta; ++round) {
        opt.budget.check("trunc_inverse");
        next = cur;
        std::exception_ptr err;
        auto step = [&](int w) {
            MPolyBuilder b(A->ring());
            for (int r = 0; r < int(G.reflections().size()); ++r) {
                const Reflection& s = G.reflections()[r];
                const MPoly& src = cur[G.mul(G.inv(s.elem), w)];
                if (src.is_zero() || coef[r].is_zero()) continue;
                if (A->is_specialized()) b.add(A->c_value(s.cls) * A->delta(r, src), coef[r]);
                else b.add_product(A->delta(r, src), Mono::var(A->c_var(s.cls)), coef[r]);
            }
            MPoly rhs = b.build();
            next[w] = rhs.is_zero() ? rhs : rhs.divide_exact(div[w]);
        };
        if (parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int w = 1; w < n; ++w) {
                try {
                    step(w);
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
            if (err) std::rethrow_exception(err);
        } else {
            for (int w = 1; w < n; ++w) step(w);
        }
        if (next == cur) break;
        cur.swap(next);
    }
    for (int w = 0; w < n; ++w) z.coeff(w) = std::move(cur[w]);
    return z;
}

}  // namespace

PBW trunc_inverse(const AlgPtr& a, const MPoly& f, const TruncOptions& opt) {
    return trunc_inverse_impl(a, f, opt, opt.parallel);
}

PBW trunc_inverse_serial(const AlgPtr& a, const MPoly& f, const TruncOptions& opt) {
    return trunc_inverse_impl(a, f, opt, false);
}

MPoly specialize(const Algebra& a, const MPoly& f, const std::vector<MPoly>& images) {
    if (int(images.size()) != a.num_c()) throw std::invalid_argument("specialize: wrong number of images");
    int nv = a.ring()->nvars();
    std::vector<MPoly> im;
    for (int v = 0; v < nv; ++v) im.push_back(MPoly::var(a.ring(), v));
    for (int k = 0; k < a.num_c(); ++k) {
        MPoly g = to_algebra(a, images[k]);
        for (int v = 0; v < nv; ++v)
            if (!a.c_mask()[v] && g.involves(v)) throw std::invalid_argument("specialize: image involves non-parameter variables");
        im[a.c_var(k)] = g;
    }
    return f.substitute(im);
}

PBW specialize(const PBW& z, const std::vector<MPoly>& images) {
    return specialize(z, make_specialized_algebra(z.algebra(), images));
}

PBW specialize(const PBW& z, const AlgPtr& target) {
    if (&target->group() != &z.algebra()->group()) throw std::invalid_argument("specialize: different groups");
    std::vector<MPoly> images;
    for (int k = 0; k < target->num_c(); ++k) images.push_back(target->c_value(k));
    PBW r(target);
    for (int w = 0; w < z.algebra()->group().order(); ++w)
        if (!z.coeff(w).is_zero()) r.coeff(w) = specialize(*target, z.coeff(w), images);
    return r;
}

}  // namespace cmx
