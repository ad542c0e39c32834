#include "cmx/cells.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <random>

namespace cmx {

namespace {

Mat columns(const std::vector<std::vector<Cyclo>>& vecs, int n) {
    Mat B{n, int(vecs.size())};
    for (int j = 0; j < int(vecs.size()); ++j)
        for (int i = 0; i < n; ++i) B(i, j) = vecs[j][i];
    return B;
}

// rows of B (full column rank) forming an invertible square block
std::vector<int> pivot_rows(const Mat& B) {
    Mat T = B.transpose();
    return T.rref();
}

// matrix of A restricted to the A-stable span of the columns of B
Mat restrict_to(const Mat& A, const Mat& B, const std::vector<int>& rows, const Mat& block_inv) {
    Mat AB = A * B;
    Mat S{int(rows.size()), B.cols()};
    for (int i = 0; i < int(rows.size()); ++i)
        for (int j = 0; j < B.cols(); ++j) S(i, j) = AB(rows[i], j);
    return block_inv * S;
}

Mat block(const Mat& B, const std::vector<int>& rows) {
    Mat S{int(rows.size()), B.cols()};
    for (int i = 0; i < int(rows.size()); ++i)
        for (int j = 0; j < B.cols(); ++j) S(i, j) = B(rows[i], j);
    return S;
}

int field_conductor(const ReflectionGroup& g, const CellOptions& opt) {
    return int(lcm_int(g.conductor(), std::max(1, opt.extra_conductor)));
}

struct Draw {
    std::vector<Cyclo> y, v;
};

Draw draw(const ReflectionGroup& g, uint64_t seed, uint64_t stream, int attempt) {
    std::seed_seq ss{uint32_t(seed), uint32_t(seed >> 32), uint32_t(stream), uint32_t(attempt)};
    std::mt19937_64 rng(ss);
    Draw d;
    do {
        d.y.clear();
        for (int i = 0; i < g.dim(); ++i) d.y.push_back(Cyclo(long(rng() % 7) - 3));
    } while (std::all_of(d.y.begin(), d.y.end(), [](const Cyclo& c) { return c.is_zero(); }));
    d.v = g.regular_vector(rng());
    return d;
}

int squarefree_degree(const Mat& m) { return upoly::deg(upoly::squarefree_part(m.charpoly())); }

// first draw whose number of distinct eigenvalues reaches the maximum seen over the witnesses
Draw select_point(const ReflectionGroup& g, uint64_t seed, const CellOptions& opt,
                  const std::function<Mat(const Draw&)>& build, int& attempts) {
    int target = 0;
    for (int i = 0; i < opt.witnesses; ++i) target = std::max(target, squarefree_degree(build(draw(g, seed, 1, i))));
    for (int a = 0; a < opt.max_retries; ++a) {
        Draw d = draw(g, seed, 0, a);
        int sd = squarefree_degree(build(d));
        if (sd >= target) {
            attempts = a + 1;
            return d;
        }
    }
    throw CellError("no generic Gaudin specialization found within the retry budget");
}

Mat isotypic_basis(const ReflectionGroup& g, int chi) {
    int n = g.order();
    Cyclo scale = Cyclo(long(g.degree(chi))) / Cyclo(long(n));
    std::vector<Cyclo> e(n);
    for (int w = 0; w < n; ++w) e[w] = scale * g.chi(chi, g.inv(w));
    std::vector<std::vector<Cyclo>> vecs;
    for (int w = 0; w < n; ++w) {
        std::vector<Cyclo> we(n);
        for (int u = 0; u < n; ++u) we[g.mul(w, u)] = e[u];
        vecs.push_back(we);
    }
    Mat R = columns(vecs, n).transpose();
    R.rref();
    int d = g.degree(chi) * g.degree(chi);
    std::vector<std::vector<Cyclo>> basis;
    for (int i = 0; i < d; ++i) {
        std::vector<Cyclo> row(n);
        for (int j = 0; j < n; ++j) row[j] = R(i, j);
        basis.push_back(row);
    }
    return columns(basis, n);
}

long to_count(const Cyclo& x, const char* what) {
    if (!x.is_rational()) throw CellError(std::string("non-rational ") + what);
    Q q = x.rational();
    if (q.get_den() != 1 || q < 0) throw CellError(std::string("non-integral ") + what + ": " + q.get_str());
    return q.get_num().get_si();
}

}  // namespace

Mat left_translation(const ReflectionGroup& g, const std::vector<Cyclo>& a) {
    int n = g.order();
    Mat L{n, n};
    for (int s = 0; s < n; ++s) {
        if (a[s].is_zero()) continue;
        for (int u = 0; u < n; ++u) L(g.mul(s, u), u) += a[s];
    }
    return L;
}

Mat right_translation(const ReflectionGroup& g, int w) {
    int n = g.order();
    Mat R{n, n};
    for (int u = 0; u < n; ++u) R(g.mul(u, w), u) = Cyclo(1);
    return R;
}

std::vector<Cyclo> gaudin_element(const ReflectionGroup& g, const std::vector<Cyclo>& c, const std::vector<Cyclo>& y,
                                  const std::vector<Cyclo>& v) {
    if (!g.is_regular(v)) throw CellError("v is not a regular vector");
    if (int(y.size()) != g.dim()) throw CellError("y has the wrong dimension");
    std::vector<Cyclo> a(g.order());
    for (auto& s : g.reflections()) {
        if (c[s.cls].is_zero()) continue;
        Cyclo num = ReflectionGroup::pair(s.root, y);
        if (num.is_zero()) continue;
        a[s.elem] += s.eps * c[s.cls] * num / ReflectionGroup::pair(s.root, v);
    }
    return a;
}

GaudinMatrix gaudin_matrix(const ReflectionGroup& g, const ParamPoint& p, const std::vector<Cyclo>& y,
                           const std::vector<Cyclo>& v, int rep) {
    GaudinMatrix G{left_translation(g, gaudin_element(g, p.c_values(g), y, v)), y, v, rep};
    if (rep >= 0) {
        if (rep >= g.num_characters()) throw CellError("no such character");
        Mat B = isotypic_basis(g, rep);
        auto rows = pivot_rows(B);
        G.m = restrict_to(G.m, B, rows, block(B, rows).inverse());
    }
    return G;
}

std::vector<std::vector<long>> CellularResult::distinct() const {
    std::vector<std::vector<long>> out;
    for (auto& c : chars) out.push_back(c.mult);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CellularResult cellular_characters(const ReflectionGroup& g, const ParamPoint& p, uint64_t seed,
                                   const CellOptions& opt) {
    if (!g.has_characters()) throw GroupError("group has no character table");
    auto c = p.c_values(g);
    CellularResult res;
    Draw d = select_point(
        g, seed, opt, [&](const Draw& d) { return left_translation(g, gaudin_element(g, c, d.y, d.v)); },
        res.attempts);
    res.y = d.y;
    res.v = d.v;
    Mat D = left_translation(g, gaudin_element(g, c, d.y, d.v));
    res.charpoly = D.charpoly();
    auto factors = factor(res.charpoly, field_conductor(g, opt));
    res.chars.resize(factors.size());

    int n = g.order();
    const auto& classes = g.classes();
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < int(factors.size()); ++i) try {
        auto& [pi, mult] = factors[i];
        Mat K = D.eval_poly(pi).pow(mult);
        auto ker = K.kernel();
        Mat B = columns(ker, n);
        auto rows = pivot_rows(B);
        Mat inv = block(B, rows).inverse();
        std::vector<Cyclo> gamma;  // per class
        for (auto& cl : classes) {
            int w = cl[0], wi = g.inv(w);
            Mat S{int(rows.size()), B.cols()};
            for (int r = 0; r < int(rows.size()); ++r)
                for (int j = 0; j < B.cols(); ++j) S(r, j) = B(g.mul(rows[r], wi), j);
            gamma.push_back((inv * S).trace());
        }
        CellularCharacter& cc = res.chars[i];
        cc.factor = pi;
        cc.defect = upoly::deg(pi);
        cc.power = mult;
        cc.dim = int(ker.size());
        for (int chi = 0; chi < g.num_characters(); ++chi) {
            Cyclo ip;
            for (size_t k = 0; k < classes.size(); ++k)
                ip += Cyclo(long(classes[k].size())) * gamma[k] * g.character(chi)[k].conj();
            ip /= Cyclo(long(n) * cc.defect);
            cc.mult.push_back(to_count(ip, "cellular multiplicity"));
        }
    } catch (...) {
#pragma omp critical
        err = std::current_exception();
    }
    if (err) std::rethrow_exception(err);
    for (auto& cc : res.chars) {
        long total = 0;
        for (int chi = 0; chi < g.num_characters(); ++chi) total += cc.mult[chi] * g.degree(chi);
        if (total * cc.defect != cc.dim) throw CellError("cellular character does not account for its eigenspace");
    }
    return res;
}

bool verify_sum_identity(const ReflectionGroup& g, const CellularResult& r) {
    for (int chi = 0; chi < g.num_characters(); ++chi) {
        long s = 0;
        for (auto& c : r.chars) s += c.defect * c.mult[chi];
        if (s != g.degree(chi)) return false;
    }
    return true;
}

std::vector<RepMultiplicity> rep_multiplicities(const ReflectionGroup& g, const ParamPoint& p, int chi,
                                                const std::vector<Cyclo>& y, const std::vector<Cyclo>& v,
                                                const CellOptions& opt) {
    Mat M = gaudin_matrix(g, p, y, v, chi).m;
    std::vector<RepMultiplicity> out;
    long d = g.degree(chi);
    for (auto& [pi, mult] : factor(M.charpoly(), field_conductor(g, opt))) {
        long dim = long(M.eval_poly(pi).pow(mult).kernel().size());
        out.push_back({pi, to_count(Cyclo(dim, d * upoly::deg(pi)), "representation multiplicity")});
    }
    return out;
}

std::vector<RepMultiplicity> rep_multiplicities(const ReflectionGroup& g, const ParamPoint& p, int chi,
                                                uint64_t seed, const CellOptions& opt) {
    int attempts = 0;
    Draw d = select_point(
        g, seed, opt, [&](const Draw& d) { return gaudin_matrix(g, p, d.y, d.v, chi).m; }, attempts);
    return rep_multiplicities(g, p, chi, d.y, d.v, opt);
}

}  // namespace cmx
