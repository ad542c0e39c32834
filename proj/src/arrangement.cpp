#include "cmx/arrangement.hpp"

#include "cmx/families.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cmx {

namespace {

// row echelon basis over Q, rows scaled to pivot 1
struct QBasis {
    std::vector<std::vector<Q>> rows;
    std::vector<int> piv;

    std::vector<Q> reduce(std::vector<Q> v) const {
        for (size_t i = 0; i < rows.size(); ++i) {
            Q f = v[piv[i]];
            if (f == 0) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * rows[i][j];
        }
        return v;
    }
    bool contains(const std::vector<Q>& v) const {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](const Q& q) { return q == 0; });
    }
    bool add(const std::vector<Q>& v) {
        auto r = reduce(v);
        auto it = std::find_if(r.begin(), r.end(), [](const Q& q) { return q != 0; });
        if (it == r.end()) return false;
        Q p = *it;
        for (auto& x : r) x /= p;
        piv.push_back(int(it - r.begin()));
        rows.push_back(std::move(r));
        return true;
    }
};

Q parse_q(const nlohmann::json& j) {
    if (j.is_number_integer()) return Q(j.get<long>());
    if (j.is_string()) {
        Q q(j.get<std::string>());
        q.canonicalize();
        return q;
    }
    throw ArrangementError("coefficients must be integers or rational strings");
}

std::vector<int> sign_vector(const std::vector<std::vector<Q>>& forms, const std::vector<Q>& x) {
    std::vector<int> s;
    for (auto& f : forms) {
        Q v = 0;
        for (size_t i = 0; i < x.size(); ++i) v += f[i] * x[i];
        int sg = sgn(v);
        if (sg == 0) return {};
        s.push_back(sg);
    }
    return s;
}

}  // namespace

void RealArrangement::normalize() {
    for (auto& f : forms) {
        if (int(f.size()) != dim) throw ArrangementError("form has the wrong length");
        mpz_class l = 1, g = 0;
        for (auto& q : f) l = lcm(l, mpz_class(q.get_den()));
        for (auto& q : f) {
            q *= l;
            g = gcd(g, mpz_class(q.get_num()));
        }
        if (g == 0) throw ArrangementError("zero form");
        auto first = std::find_if(f.begin(), f.end(), [](const Q& q) { return q != 0; });
        if (*first < 0) g = -g;
        for (auto& q : f) q /= g;
    }
    for (size_t i = 0; i < forms.size(); ++i)
        for (size_t j = i + 1; j < forms.size(); ++j)
            if (forms[i] == forms[j]) throw ArrangementError("proportional forms");
}

RealArrangement RealArrangement::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    RealArrangement a;
    a.dim = j.at("dim").get<int>();
    a.name = j.value("name", "");
    if (j.contains("orbit_orders")) a.orbit_orders = j["orbit_orders"].get<std::vector<int>>();
    for (auto& f : j.at("forms")) {
        std::vector<Q> v;
        for (auto& c : f) v.push_back(parse_q(c));
        a.forms.push_back(v);
    }
    a.normalize();
    return a;
}

RealArrangement RealArrangement::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArrangementError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

std::string RealArrangement::to_json() const {
    nlohmann::json j;
    if (!name.empty()) j["name"] = name;
    j["dim"] = dim;
    j["orbit_orders"] = orbit_orders;
    j["forms"] = nlohmann::json::array();
    for (auto& f : forms) {
        nlohmann::json row = nlohmann::json::array();
        for (auto& q : f) {
            if (q.get_den() == 1 && q.get_num().fits_slong_p())
                row.push_back(q.get_num().get_si());
            else
                row.push_back(q.get_str());
        }
        j["forms"].push_back(row);
    }
    return j.dump();
}

RealArrangement RealArrangement::from_families(const Families& f) {
    const auto& g = f.group();
    RealArrangement a;
    a.name = g.name();
    a.dim = int(g.k_names().size());
    for (auto& o : g.orbits()) a.orbit_orders.push_back(o.order);
    for (auto& h : f.hyperplanes()) {
        std::vector<Q> v;
        for (auto& c : h.coeffs) {
            if (!c.is_rational()) throw ArrangementError("hyperplane with irrational coefficients");
            v.push_back(c.rational());
        }
        a.forms.push_back(v);
    }
    a.normalize();
    return a;
}

std::vector<std::vector<std::vector<int>>> intersection_lattice(const RealArrangement& a) {
    std::vector<std::vector<std::vector<int>>> ranks{{{}}};
    int n = int(a.forms.size());
    while (true) {
        std::set<std::vector<int>> next;
        for (auto& flat : ranks.back()) {
            QBasis b;
            for (int i : flat) b.add(a.forms[i]);
            std::vector<bool> in(n);
            for (int i : flat) in[i] = true;
            for (int h = 0; h < n; ++h) {
                if (in[h]) continue;
                QBasis c = b;
                c.add(a.forms[h]);
                std::vector<int> closure;
                for (int j = 0; j < n; ++j)
                    if (in[j] || j == h || c.contains(a.forms[j])) closure.push_back(j);
                next.insert(closure);
            }
        }
        if (next.empty()) break;
        ranks.emplace_back(next.begin(), next.end());
    }
    return ranks;
}

std::vector<long> poincare_polynomial(const RealArrangement& a) {
    auto ranks = intersection_lattice(a);
    std::vector<std::pair<std::vector<int>, long>> mu;  // flats below the current rank
    std::vector<long> p;
    for (size_t r = 0; r < ranks.size(); ++r) {
        long coeff = 0;
        std::vector<std::pair<std::vector<int>, long>> level;
        for (auto& x : ranks[r]) {
            long m = r == 0 ? 1 : 0;
            for (auto& [y, my] : mu)
                if (std::includes(x.begin(), x.end(), y.begin(), y.end())) m -= my;
            level.push_back({x, m});
            long signed_m = (r % 2 == 0) ? m : -m;
            if (signed_m < 0) throw ArrangementError("Moebius function with unexpected sign");
            coeff += signed_m;
        }
        mu.insert(mu.end(), level.begin(), level.end());
        p.push_back(coeff);
    }
    return p;
}

std::string poincare_str(const std::vector<long>& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || p[i] != 1) s += std::to_string(p[i]);
        if (i >= 1) s += "t";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

long chamber_count(const RealArrangement& a) {
    long s = 0;
    for (long c : poincare_polynomial(a)) s += c;
    return s;
}

long chamber_count_by_signs(const RealArrangement& a) {
    if (a.forms.empty()) return 1;
    QBasis b;
    for (auto& f : a.forms) b.add(f);
    int r = int(b.rows.size());
    if (r > 3) throw ArrangementError("sign-vector enumeration needs rank at most 3");
    // forms in coordinates of the row space
    std::vector<std::vector<Q>> F;
    for (auto& f : a.forms) {
        std::vector<Q> g(r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < a.dim; ++j) g[i] += f[j] * b.rows[i][j];
        F.push_back(g);
    }
    std::set<std::vector<Q>> rays;
    auto add_ray = [&](std::vector<Q> v) {
        if (std::all_of(v.begin(), v.end(), [](const Q& q) { return q == 0; })) return;
        rays.insert(v);
        for (auto& q : v) q = -q;
        rays.insert(v);
    };
    int n = int(F.size());
    if (r == 1) add_ray({Q(1)});
    if (r == 2)
        for (auto& f : F) add_ray({-f[1], f[0]});
    if (r == 3)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto& u = F[i];
                auto& v = F[j];
                add_ray({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]});
            }
    std::vector<std::vector<Q>> R(rays.begin(), rays.end());
    std::set<std::vector<int>> signs;
    auto record = [&](const std::vector<Q>& x) {
        auto s = sign_vector(F, x);
        if (!s.empty()) signs.insert(s);
    };
    int m = int(R.size());
    if (r == 1)
        for (auto& x : R) record(x);
    for (int i = 0; i < m && r >= 2; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<Q> x(r);
            for (int k = 0; k < r; ++k) x[k] = R[i][k] + R[j][k];
            if (r == 2) {
                record(x);
                continue;
            }
            for (int l = j + 1; l < m; ++l) {
                std::vector<Q> y = x;
                for (int k = 0; k < r; ++k) y[k] += R[l][k];
                record(y);
            }
        }
    return long(signs.size());
}

long qft_count(const RealArrangement& a) {
    if (a.orbit_orders.empty()) throw ArrangementError("orbit orders not set");
    long denom = 1;
    for (int e : a.orbit_orders)
        for (int i = 2; i <= e; ++i) denom *= i;
    long ch = chamber_count(a);
    if (ch % denom != 0)
        throw ArrangementError(std::to_string(ch) + " chambers not divisible by " + std::to_string(denom));
    return ch / denom;
}

std::string arrangements_dir() {
    if (const char* e = std::getenv("CHEREDNIK_ARRANGEMENTS")) return e;
    return std::string(CMX_DATA_DIR) + "/data/arrangements";
}

}  // namespace cmx
