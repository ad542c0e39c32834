#include "cmx/families.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmx {

// ---------------------------------------------------------------- partitions

void FamilyPartition::canonicalize() {
    for (auto& p : parts) std::sort(p.begin(), p.end());
    std::erase_if(parts, [](const auto& p) { return p.empty(); });
    std::sort(parts.begin(), parts.end());
}

std::vector<size_t> FamilyPartition::part_sizes() const {
    std::vector<size_t> s;
    for (auto& p : parts) s.push_back(p.size());
    std::sort(s.rbegin(), s.rend());
    return s;
}

int FamilyPartition::part_of(int chi) const {
    for (size_t i = 0; i < parts.size(); ++i)
        if (std::find(parts[i].begin(), parts[i].end(), chi) != parts[i].end()) return int(i);
    return -1;
}

namespace {

std::set<int> support(const FamilyPartition& p) {
    std::set<int> s;
    for (auto& part : p.parts) s.insert(part.begin(), part.end());
    return s;
}

void check_same_set(const FamilyPartition& p, const FamilyPartition& q) {
    if (support(p) != support(q)) throw std::invalid_argument("partitions of different character sets");
}

}  // namespace

FamilyPartition meet(const FamilyPartition& p, const FamilyPartition& q) {
    check_same_set(p, q);
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int x : support(p)) parent[x] = x;
    for (auto* part : {&p.parts, &q.parts})
        for (auto& s : *part)
            for (size_t i = 1; i < s.size(); ++i) parent[find(s[i])] = find(s[0]);
    std::map<int, std::vector<int>> groups;
    for (auto& [x, _] : parent) groups[find(x)].push_back(x);
    FamilyPartition r;
    for (auto& [_, g] : groups) r.parts.push_back(g);
    r.canonicalize();
    return r;
}

bool is_union_of(const FamilyPartition& coarse, const FamilyPartition& fine) {
    check_same_set(coarse, fine);
    for (auto& f : fine.parts) {
        int home = coarse.part_of(f[0]);
        for (int x : f)
            if (coarse.part_of(x) != home) return false;
    }
    return true;
}

// ---------------------------------------------------------------- hyperplanes

HyperplaneForm HyperplaneForm::normalized(std::vector<Cyclo> c) {
    auto first = std::find_if(c.begin(), c.end(), [](const Cyclo& x) { return !x.is_zero(); });
    if (first == c.end()) throw std::invalid_argument("hyperplane form is zero");
    Cyclo lead = *first;
    for (auto& x : c) x /= lead;
    bool rational = std::all_of(c.begin(), c.end(), [](const Cyclo& x) { return x.is_rational(); });
    if (rational) {
        mpz_class den = 1, num = 0;
        for (auto& x : c) {
            Q q = x.rational();
            den = lcm(den, mpz_class(q.get_den()));
        }
        for (auto& x : c) {
            Q q = x.rational() * den;
            num = gcd(num, mpz_class(q.get_num()));
        }
        for (auto& x : c) x = Cyclo(Q(x.rational() * den / num));
    }
    return HyperplaneForm{std::move(c)};
}

HyperplaneForm HyperplaneForm::parse(const ReflectionGroup& g, const std::string& text) {
    std::string t = std::regex_replace(text, std::regex(R"(k_\{(\d+),(\d+)\})"), "K$1_$2");
    for (auto& [alias, target] : g.spec().parameters) {
        auto [is_k, idx] = g.parameter(alias);
        if (is_k) t = std::regex_replace(t, std::regex("\\b" + alias + "\\b"), g.k_names()[idx]);
    }
    MPoly f = parse_poly(g.k_ring(), t);
    std::vector<Cyclo> c(g.k_ring()->nvars());
    for (auto& [m, v] : f.terms()) {
        if (m.deg() != 1) throw std::invalid_argument("hyperplane must be a homogeneous linear form: " + text);
        for (int i = 0; i < int(c.size()); ++i)
            if (m.e[i]) c[i] = v;
    }
    return normalized(c);
}

MPoly HyperplaneForm::poly(const ReflectionGroup& g) const {
    MPolyBuilder b(g.k_ring());
    for (size_t i = 0; i < coeffs.size(); ++i) b.add(Mono::var(int(i)), coeffs[i]);
    return b.build();
}

std::string HyperplaneForm::str(const ReflectionGroup& g) const {
    auto names = g.k_names();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const Cyclo& c = coeffs[i];
        if (c.is_zero()) continue;
        if (c.is_rational()) {
            Q q = c.rational();
            bool neg = q < 0;
            if (neg) q = -q;
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            if (q != 1) os << q.get_str() << "*";
        } else {
            os << (first ? "" : " + ") << "(" << c.str() << ")*";
        }
        os << names[i];
        first = false;
    }
    return os.str();
}

Cyclo HyperplaneForm::eval(const std::vector<Cyclo>& k) const {
    Cyclo s;
    for (size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * k[i];
    return s;
}

HyperplaneForm HyperplaneForm::sharp(const ReflectionGroup& g) const {
    std::vector<Cyclo> c(coeffs.size());
    int off = 0;
    for (auto& o : g.orbits()) {
        int e = o.order;
        for (int j = 1; j < e; ++j) c[off + (e - j) - 1] = coeffs[off + j - 1];
        off += e - 1;
    }
    return normalized(c);
}

// ---------------------------------------------------------------- Omega

std::vector<MPoly> omega(const Algebra& a, const PBW& z) {
    if (!is_central(z)) throw std::invalid_argument("omega: element is not central");
    const auto& g = a.group();
    std::vector<int> to_c(a.ring()->nvars(), -1);
    for (int k = 0; k < a.num_c(); ++k) to_c[a.c_var(k)] = k;
    std::vector<MPoly> out;
    for (int w = 0; w < g.order(); ++w) {
        MPolyBuilder b(g.c_ring());
        for (auto& [m, c] : z.coeff(w).terms()) {
            bool pure = true;
            for (int v = 0; v < a.ring()->nvars(); ++v)
                if (m.e[v] && to_c[v] < 0) pure = false;
            if (!pure) continue;
            Mono r;
            for (int k = 0; k < a.num_c(); ++k) r.e[k] = m.e[a.c_var(k)];
            b.add(r, c);
        }
        out.push_back(b.build());
    }
    return out;
}

MPoly omega_chi(const Algebra& a, const std::vector<MPoly>& om, int chi) {
    const auto& g = a.group();
    MPolyBuilder b(g.c_ring());
    Cyclo inv_deg = Cyclo(1, long(g.degree(chi)));
    for (int w = 0; w < g.order(); ++w)
        if (!om[w].is_zero()) b.add(om[w], g.chi(chi, w) * inv_deg);
    return b.build();
}

MPoly omega_chi(const Algebra& a, const PBW& z, int chi) { return omega_chi(a, omega(a, z), chi); }

// ---------------------------------------------------------------- points

ParamPoint ParamPoint::from_c(const ReflectionGroup& g, const std::vector<Cyclo>& c) {
    ParamPoint p;
    for (auto& f : g.k_in_c()) p.k.push_back(f.evaluate(c));
    return p;
}

std::vector<Cyclo> ParamPoint::c_values(const ReflectionGroup& g) const {
    std::vector<Cyclo> c;
    for (auto& f : g.c_in_k()) c.push_back(f.evaluate(k));
    return c;
}

bool ParamPoint::is_zero() const {
    return std::all_of(k.begin(), k.end(), [](const Cyclo& x) { return x.is_zero(); });
}

ParamPoint ParamPoint::parse(const ReflectionGroup& g, const std::string& text) {
    int n = g.num_c();
    std::vector<std::optional<Cyclo>> vals(n);
    std::optional<bool> kind;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected name=value in " + item);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        auto [is_k, idx] = g.parameter(trim(item.substr(0, eq)));
        if (kind && *kind != is_k) throw std::invalid_argument("mixed C- and K-parameters in " + text);
        kind = is_k;
        vals[idx] = parse_cyclo(trim(item.substr(eq + 1)));
    }
    std::vector<Cyclo> v;
    for (int i = 0; i < n; ++i) {
        if (!vals[i]) {
            auto names = kind.value_or(false) ? g.k_names() : g.c_names();
            throw std::invalid_argument("missing value for parameter " + names[i]);
        }
        v.push_back(*vals[i]);
    }
    return kind.value_or(false) ? from_k(v) : from_c(g, v);
}

// ---------------------------------------------------------------- Families

Families::Families(std::shared_ptr<const Center> z) : z_(std::move(z)) {
    const Algebra& A = *z_->algebra();
    const auto& g = A.group();
    if (!g.has_characters()) throw GroupError("group has no character table");
    for (int i = 0; i < z_->num_generators(); ++i)
        if (z_->z_degree(i) == 0) {
            if (z_->bidegree(i) == std::make_pair(1, 1)) euler_col_ = int(deg0_.size());
            deg0_.push_back(i);
        }
    std::vector<std::vector<MPoly>> om(deg0_.size());
    for (size_t c = 0; c < deg0_.size(); ++c) om[c] = omega(A, z_->generators()[deg0_[c]]);
    table_.assign(g.num_characters(), {});
    table_k_.assign(g.num_characters(), {});
    for (int chi = 0; chi < g.num_characters(); ++chi)
        for (size_t c = 0; c < deg0_.size(); ++c) {
            table_[chi].push_back(omega_chi(A, om[c], chi));
            table_k_[chi].push_back(g.c_to_k(table_[chi].back()));
        }
}

FamilyPartition Families::generic() const { return fibers(table_, "generic"); }

FamilyPartition Families::on_hyperplane(const HyperplaneForm& h) const {
    const auto& g = group();
    int pivot = -1;
    Q best = 0;
    for (int i = 0; i < int(h.coeffs.size()); ++i) {
        const Cyclo& c = h.coeffs[i];
        if (c.is_zero()) continue;
        Q mag = c.is_rational() ? abs(c.rational()) : Q(0);
        if (pivot < 0 || mag > best) {
            pivot = i;
            best = mag;
        }
    }
    if (pivot < 0) throw std::invalid_argument("hyperplane form is zero");
    auto R = g.k_ring();
    std::vector<MPoly> im;
    for (int i = 0; i < R->nvars(); ++i) im.push_back(MPoly::var(R, i));
    MPolyBuilder b(R);
    Cyclo inv = -h.coeffs[pivot].inverse();
    for (int i = 0; i < R->nvars(); ++i)
        if (i != pivot && !h.coeffs[i].is_zero()) b.add(Mono::var(i), h.coeffs[i] * inv);
    im[pivot] = b.build();
    std::vector<std::vector<MPoly>> rows;
    for (auto& r : table_k_) {
        std::vector<MPoly> s;
        for (auto& e : r) s.push_back(e.substitute(im));
        rows.push_back(std::move(s));
    }
    return fibers(rows, "hyperplane " + h.str(g));
}

std::vector<HyperplaneForm> Families::hyperplanes() const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (hyper_) return *hyper_;
    }
    const auto& g = group();
    int n = g.num_characters();
    std::vector<HyperplaneForm> cands;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            MPoly d = table_k_[a][euler_col_] - table_k_[b][euler_col_];
            if (d.is_zero()) continue;
            std::vector<Cyclo> c(g.k_ring()->nvars());
            for (auto& [m, v] : d.terms()) {
                if (m.deg() != 1) throw std::logic_error("Euler column is not linear");
                for (int i = 0; i < int(c.size()); ++i)
                    if (m.e[i]) c[i] = v;
            }
            auto h = HyperplaneForm::normalized(c);
            if (std::find(cands.begin(), cands.end(), h) == cands.end()) cands.push_back(h);
        }
    FamilyPartition gen = generic();
    std::vector<HyperplaneForm> out;
    for (auto& h : cands)
        if (on_hyperplane(h).size() < gen.size()) out.push_back(h);
    std::sort(out.begin(), out.end(), [](const HyperplaneForm& a, const HyperplaneForm& b) {
        auto nz = [](const HyperplaneForm& h) {
            return std::count_if(h.coeffs.begin(), h.coeffs.end(), [](const Cyclo& c) { return !c.is_zero(); });
        };
        if (nz(a) != nz(b)) return nz(a) < nz(b);
        int m = 1;
        for (auto* h : {&a, &b})
            for (auto& c : h->coeffs) m = int(lcm_int(m, c.conductor()));
        for (size_t i = 0; i < a.coeffs.size(); ++i)
            if (int d = Cyclo::compare_at(a.coeffs[i], b.coeffs[i], m)) return d > 0;
        return false;
    });
    std::lock_guard<std::mutex> lk(mu_);
    hyper_ = out;
    return out;
}

FamilyPartition Families::at_point(const ParamPoint& p) const {
    FamilyPartition r = generic();
    bool any = false;
    for (auto& h : hyperplanes())
        if (h.eval(p.k).is_zero()) {
            r = meet(r, on_hyperplane(h));
            any = true;
        }
    r.label = any ? "point" : "generic";
    return r;
}

FamilyPartition Families::at_point_direct(const ParamPoint& p) const {
    auto c = p.c_values(group());
    std::vector<std::vector<Cyclo>> rows;
    for (auto& r : table_) {
        std::vector<Cyclo> v;
        for (auto& e : r) v.push_back(e.evaluate(c));
        rows.push_back(std::move(v));
    }
    return fibers(rows, "point");
}

std::vector<std::vector<int>> Families::cuspidal(const ParamPoint& p) const {
    if (p.is_zero()) throw std::invalid_argument("cuspidal families: the parameter must be nonzero");
    const Center& Z = *z_;
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (!brackets_) {
            std::vector<std::pair<std::pair<int, int>, MPoly>> br;
            for (int i = 0; i < Z.num_generators(); ++i)
                for (int j = i + 1; j < Z.num_generators(); ++j)
                    if (Z.z_degree(i) + Z.z_degree(j) == 0)
                        br.push_back({{i, j}, Z.preimage(Z.poisson_bracket(Z.generators()[i], Z.generators()[j]))});
            brackets_ = std::move(br);
        }
    }
    auto c = p.c_values(group());
    auto fam = at_point_direct(p);
    std::vector<std::vector<int>> out;
    for (auto& part : fam.parts) {
        int chi = part[0];
        std::vector<Cyclo> point(Z.z_ring()->nvars());
        for (int k = 0; k < Z.algebra()->num_c(); ++k) point[k] = c[k];
        for (size_t col = 0; col < deg0_.size(); ++col) point[Z.z_var(deg0_[col])] = table_[chi][col].evaluate(c);
        bool cusp = true;
        for (auto& [ij, f] : *brackets_)
            if (!f.evaluate(point).is_zero()) {
                cusp = false;
                break;
            }
        if (cusp) out.push_back(part);
    }
    return out;
}

// ---------------------------------------------------------------- Martino

namespace {

FamilyPartition parse_labels(const ReflectionGroup& g, const nlohmann::json& j) {
    FamilyPartition p;
    for (auto& part : j) {
        std::vector<int> v;
        for (auto& l : part) {
            int chi = g.character_by_label(l.get<std::string>());
            if (chi < 0) throw std::invalid_argument("unknown character label " + l.get<std::string>());
            v.push_back(chi);
        }
        p.parts.push_back(v);
    }
    p.canonicalize();
    return p;
}

}  // namespace

RouquierData parse_rouquier(const ReflectionGroup& g, const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    RouquierData r;
    std::string conv = j.value("convention", "k");
    if (conv != "k" && conv != "k_sharp") throw std::invalid_argument("convention must be k or k_sharp");
    r.sharp_convention = conv == "k_sharp";
    r.generic = parse_labels(g, j.at("generic"));
    for (auto& e : j.value("essential", nlohmann::json::array()))
        r.essential.push_back({HyperplaneForm::parse(g, e.at("hyperplane").get<std::string>()),
                               parse_labels(g, e.at("families"))});
    return r;
}

MartinoReport martino_check(const Families& f, const RouquierData& r, bool equality) {
    const auto& g = f.group();
    MartinoReport rep;
    auto test = [&](const FamilyPartition& cm, const FamilyPartition& rou) {
        return equality ? cm == rou : is_union_of(cm, rou);
    };
    MartinoVerdict v0{"", "generic", test(f.generic(), r.generic)};
    rep.verdicts.push_back(v0);
    for (auto& h : f.hyperplanes()) {
        HyperplaneForm hs = r.sharp_convention ? h : h.sharp(g);
        MartinoVerdict v;
        v.hyperplane = h.str(g);
        const FamilyPartition* rou = &r.generic;
        v.compared_with = "generic";
        for (auto& [eh, fam] : r.essential)
            if (eh == hs) {
                rou = &fam;
                v.compared_with = eh.str(g);
            }
        v.ok = test(f.on_hyperplane(h), *rou);
        rep.verdicts.push_back(v);
    }
    for (auto& v : rep.verdicts) rep.ok = rep.ok && v.ok;
    return rep;
}

}  // namespace cmx
