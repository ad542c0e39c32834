#include "cmx/reflection.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace cmx {

using nlohmann::json;

namespace {

Cyclo read_scalar(const json& j, int n) {
    if (j.is_number_integer()) return Cyclo(long(j.get<long>()));
    if (j.is_string()) return parse_cyclo(j.get<std::string>());
    if (j.is_array()) {
        std::vector<Q> c;
        for (auto& x : j) {
            Q q;
            if (x.is_number_integer()) q = Q(x.get<long>());
            else q = Q(x.get<std::string>());
            q.canonicalize();
            c.push_back(q);
        }
        return Cyclo::from_coeffs(n, c);
    }
    throw GroupError("bad scalar in group file");
}

int find_parent(std::vector<int>& p, int a) {
    while (p[a] != a) a = p[a] = p[p[a]];
    return a;
}

}  // namespace

std::vector<Cyclo> normalize_first(std::vector<Cyclo> v) {
    for (auto& x : v)
        if (!x.is_zero()) {
            Cyclo inv = x.inverse();
            for (auto& y : v) y *= inv;
            return v;
        }
    return v;
}

GroupSpec parse_group_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw GroupError(std::string("malformed group file: ") + e.what());
    }
    GroupSpec s;
    try {
        s.name = j.at("name").get<std::string>();
        s.dim = j.at("dim").get<int>();
        s.conductor = j.value("conductor", 1);
        for (auto& g : j.at("generators")) {
            Mat m(s.dim, s.dim);
            if (int(g.size()) != s.dim) throw GroupError("generator has wrong size");
            for (int r = 0; r < s.dim; ++r) {
                if (int(g[r].size()) != s.dim) throw GroupError("generator has wrong size");
                for (int c = 0; c < s.dim; ++c) m(r, c) = read_scalar(g[r][c], s.conductor);
            }
            if (m.det().is_zero()) throw GroupError("generator not invertible");
            s.generators.push_back(m);
        }
        if (j.contains("classes")) s.class_words = j["classes"].get<std::vector<std::vector<int>>>();
        if (j.contains("characters"))
            for (auto& row : j["characters"]) {
                std::vector<Cyclo> r;
                for (auto& x : row) r.push_back(read_scalar(x, s.conductor));
                s.characters.push_back(r);
            }
        if (j.contains("parameters")) s.parameters = j["parameters"].get<std::map<std::string, std::string>>();
    } catch (const json::exception& e) {
        throw GroupError(std::string("malformed group file: ") + e.what());
    }
    if (s.generators.empty()) throw GroupError("group has no generators");
    s.canonical = j.dump();
    return s;
}

GroupSpec load_group_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GroupError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_group_spec(ss.str());
}

std::string groups_dir() {
    if (const char* e = std::getenv("CHEREDNIK_GROUPS")) return e;
    return std::string(CMX_DATA_DIR) + "/groups";
}

GroupSpec find_group(const std::string& name) {
    namespace fs = std::filesystem;
    if (name.find('/') != std::string::npos || (name.size() > 5 && name.ends_with(".json"))) {
        if (!fs::exists(name)) throw GroupError("group not found");
        return load_group_spec(name);
    }
    fs::path p = fs::path(groups_dir()) / (name + ".json");
    if (!fs::exists(p)) throw GroupError("group not found");
    return load_group_spec(p.string());
}

std::vector<Q> ReflectionGroup::key(const Mat& m) const {
    std::vector<Q> k;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            auto c = m(i, j).coeffs_at(spec_.conductor);
            k.insert(k.end(), c.begin(), c.end());
        }
    return k;
}

int ReflectionGroup::index_of(const Mat& m) const {
    if (m.conductor() != 1 && spec_.conductor % m.conductor() != 0) return -1;
    auto it = index_.find(key(m));
    return it == index_.end() ? -1 : it->second;
}

int ReflectionGroup::eval_word(const std::vector<int>& word) const {
    int g = 0;
    for (int i : word) {
        if (i < 0 || i >= int(spec_.generators.size())) throw GroupError("class word uses unknown generator");
        g = mul(g, index_of(spec_.generators[i]));
    }
    return g;
}

void ReflectionGroup::enumerate(size_t max_order) {
    for (auto& g : spec_.generators)
        if (g.conductor() != 1 && spec_.conductor % g.conductor() != 0)
            throw GroupError("generator entries outside the declared field");
    Mat one = Mat::identity(spec_.dim);
    elems_.push_back(one);
    index_[key(one)] = 0;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int f : frontier)
            for (auto& g : spec_.generators) {
                Mat h = elems_[f] * g;
                auto k = key(h);
                if (index_.count(k)) continue;
                if (elems_.size() >= max_order) throw GroupError("group closure exceeds bound");
                index_[k] = int(elems_.size());
                next.push_back(int(elems_.size()));
                elems_.push_back(std::move(h));
            }
        frontier = std::move(next);
    }
    size_t n = elems_.size();
    table_.assign(n * n, -1);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            int c = index_of(elems_[a] * elems_[b]);
            if (c < 0) throw GroupError("closure failed");
            table_[a * n + b] = c;
        }
    inv_.assign(n, -1);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (table_[a * n + b] == 0) inv_[a] = int(b);
    det_.clear();
    for (auto& m : elems_) det_.push_back(m.det());
    class_of_.assign(n, -1);
    for (size_t a = 0; a < n; ++a) {
        if (class_of_[a] >= 0) continue;
        std::vector<int> cl;
        for (size_t w = 0; w < n; ++w) {
            int c = mul(mul(int(w), int(a)), inv_[w]);
            if (class_of_[c] < 0) {
                class_of_[c] = int(classes_.size());
                cl.push_back(c);
            }
        }
        std::sort(cl.begin(), cl.end());
        classes_.push_back(cl);
    }
}

void ReflectionGroup::find_reflections() {
    int n = order();
    refl_of_.assign(n, -1);
    std::map<std::vector<Q>, int> hyper_index;
    for (int a = 1; a < n; ++a) {
        Mat d = elems_[a] - Mat::identity(dim());
        if (d.rank() != 1) continue;
        Reflection r;
        r.elem = a;
        r.eps = det_[a];
        for (int i = 0; i < dim() && r.root.empty(); ++i)
            for (int j = 0; j < dim(); ++j)
                if (!d(i, j).is_zero()) {
                    for (int k = 0; k < dim(); ++k) r.root.push_back(d(i, k));
                    break;
                }
        for (int j = 0; j < dim() && r.coroot.empty(); ++j)
            for (int i = 0; i < dim(); ++i)
                if (!d(i, j).is_zero()) {
                    for (int k = 0; k < dim(); ++k) r.coroot.push_back(d(k, j));
                    break;
                }
        r.root = normalize_first(r.root);
        r.coroot = normalize_first(r.coroot);
        std::vector<Q> hk;
        for (auto& x : r.root) {
            auto c = x.coeffs_at(spec_.conductor);
            hk.insert(hk.end(), c.begin(), c.end());
        }
        auto it = hyper_index.find(hk);
        if (it == hyper_index.end()) {
            Hyperplane h;
            h.root = r.root;
            h.coroot = r.coroot;
            h.stabilizer = {0};
            it = hyper_index.emplace(hk, int(hyper_.size())).first;
            hyper_.push_back(h);
        }
        r.hyperplane = it->second;
        hyper_[r.hyperplane].stabilizer.push_back(a);
        refl_of_[a] = int(refl_.size());
        refl_.push_back(r);
    }
    if (refl_.empty()) throw GroupError("group contains no reflections");
    for (auto& h : hyper_) h.order = int(h.stabilizer.size());

    // generated by reflections
    std::vector<bool> seen(n, false);
    seen[0] = true;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int g = stack.back();
        stack.pop_back();
        for (auto& r : refl_) {
            int h = mul(g, r.elem);
            if (!seen[h]) {
                seen[h] = true;
                stack.push_back(h);
            }
        }
    }
    if (std::count(seen.begin(), seen.end(), true) != n) throw GroupError("group not generated by its reflections");

    // hyperplane orbits via conjugation of reflections
    std::vector<int> parent(hyper_.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (auto& r : refl_)
        for (int w = 0; w < n; ++w) {
            int c = mul(mul(w, r.elem), inv_[w]);
            int a = find_parent(parent, r.hyperplane), b = find_parent(parent, refl_[refl_of_[c]].hyperplane);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, int> orbit_of_root;
    for (int h = 0; h < int(hyper_.size()); ++h) {
        int root = find_parent(parent, h);
        auto it = orbit_of_root.find(root);
        if (it == orbit_of_root.end()) {
            it = orbit_of_root.emplace(root, int(orbits_.size())).first;
            orbits_.push_back({{}, hyper_[h].order});
        }
        hyper_[h].orbit = it->second;
        orbits_[it->second].hyperplanes.push_back(h);
    }

    std::map<int, int> cls_index;
    for (auto& r : refl_) {
        int c = class_of_[r.elem];
        auto it = cls_index.find(c);
        if (it == cls_index.end()) {
            it = cls_index.emplace(c, int(refl_classes_.size())).first;
            refl_classes_.push_back({});
        }
        r.cls = it->second;
        refl_classes_[r.cls].push_back(r.elem);
    }
}

std::vector<std::string> ReflectionGroup::c_names() const {
    std::vector<std::string> out;
    for (int k = 0; k < num_c(); ++k) out.push_back("C" + std::to_string(k + 1));
    return out;
}

std::vector<std::string> ReflectionGroup::k_names() const {
    std::vector<std::string> out;
    for (int o = 0; o < int(orbits_.size()); ++o)
        for (int j = 1; j < orbits_[o].order; ++j) out.push_back("K" + std::to_string(o + 1) + "_" + std::to_string(j));
    return out;
}

void ReflectionGroup::build_parameters() {
    auto cn = c_names(), kn = k_names();
    c_ring_ = make_ring(cn, std::vector<std::pair<int, int>>(cn.size(), {1, 1}));
    k_ring_ = make_ring(kn, std::vector<std::pair<int, int>>(kn.size(), {1, 1}));
    if (cn.size() != kn.size()) throw GroupError("parameter spaces C and K have different dimensions");
    std::vector<int> k_offset;
    int off = 0;
    for (auto& o : orbits_) {
        k_offset.push_back(off);
        off += o.order - 1;
    }
    int r = num_c();
    Mat M(r, r);
    for (int k = 0; k < r; ++k) {
        const Reflection& s = refl_[refl_of_[refl_classes_[k][0]]];
        int o = hyper_[s.hyperplane].orbit;
        int e = orbits_[o].order;
        Cyclo einv = s.eps.inverse();
        MPolyBuilder b(k_ring_);
        for (int j = 1; j < e; ++j) {
            Cyclo coef = s.eps.pow(j - 1) - einv;
            M(k, k_offset[o] + j - 1) = coef;
            b.add(Mono::var(k_offset[o] + j - 1), coef);
        }
        c_in_k_.push_back(b.build());
    }
    if (M.rank() != r) throw GroupError("parameter change of basis is singular");
    Mat Mi = M.inverse();
    for (int i = 0; i < r; ++i) {
        MPolyBuilder b(c_ring_);
        for (int k = 0; k < r; ++k) b.add(Mono::var(k), Mi(i, k));
        k_in_c_.push_back(b.build());
    }
}

MPoly ReflectionGroup::c_to_k(const MPoly& f) const {
    std::vector<MPoly> images;
    for (auto& n : f.ring()->names()) {
        int i = c_ring_->index(n);
        if (i < 0) throw GroupError("not a C-variable: " + n);
        images.push_back(c_in_k_[i]);
    }
    if (images.empty()) return MPoly(k_ring_, f.constant_term());
    return f.substitute(images);
}

MPoly ReflectionGroup::k_to_c(const MPoly& f) const {
    std::vector<MPoly> images;
    for (auto& n : f.ring()->names()) {
        int i = k_ring_->index(n);
        if (i < 0) throw GroupError("not a K-variable: " + n);
        images.push_back(k_in_c_[i]);
    }
    if (images.empty()) return MPoly(c_ring_, f.constant_term());
    return f.substitute(images);
}

std::pair<bool, int> ReflectionGroup::parameter(const std::string& name) const {
    std::string n = name;
    auto it = spec_.parameters.find(name);
    if (it != spec_.parameters.end()) n = it->second;
    if (int i = c_ring_->index(n); i >= 0) return {false, i};
    if (int i = k_ring_->index(n); i >= 0) return {true, i};
    throw GroupError("unknown parameter " + name);
}

void ReflectionGroup::load_characters() {
    if (spec_.characters.empty()) return;
    if (spec_.class_words.size() != classes_.size()) throw GroupError("class list does not match the group");
    std::vector<int> listed_of(classes_.size(), -1);
    for (int l = 0; l < int(spec_.class_words.size()); ++l) {
        int c = class_of_[eval_word(spec_.class_words[l])];
        if (listed_of[c] >= 0) throw GroupError("two listed classes coincide");
        listed_of[c] = l;
    }
    for (auto& row : spec_.characters) {
        if (row.size() != classes_.size()) throw GroupError("character row has wrong length");
        std::vector<Cyclo> r;
        for (size_t c = 0; c < classes_.size(); ++c) r.push_back(row[listed_of[c]]);
        chars_.push_back(r);
    }
    int m = spec_.conductor;
    for (auto& row : chars_)
        for (auto& x : row)
            if (x.conductor() != 1) m = int(lcm_int(m, x.conductor()));
    std::stable_sort(chars_.begin(), chars_.end(), [&](const auto& a, const auto& b) {
        int c = Cyclo::compare_at(a[0], b[0], m);
        if (c) return c < 0;
        for (size_t k = 1; k < a.size(); ++k)
            if (int d = Cyclo::compare_at(a[k], b[k], m)) return d > 0;
        return false;
    });
    std::map<int, int> seen;
    for (int i = 0; i < num_characters(); ++i) {
        int d = degree(i);
        labels_.push_back(std::to_string(d) + "_" + std::to_string(++seen[d]));
    }
}

int ReflectionGroup::degree(int chi) const {
    const Cyclo& d = chars_[chi][0];
    if (!d.is_rational() || d.rational().get_den() != 1) throw GroupError("character degree not an integer");
    return int(d.rational().get_num().get_si());
}

int ReflectionGroup::character_by_label(const std::string& l) const {
    for (int i = 0; i < num_characters(); ++i)
        if (labels_[i] == l) return i;
    return -1;
}

ValidationReport ReflectionGroup::validate_characters() const {
    ValidationReport rep;
    if (chars_.empty()) {
        rep.ok = false;
        rep.detail = "no character table";
        return rep;
    }
    int k = int(classes_.size());
    if (int(chars_.size()) != k) {
        rep.ok = false;
        rep.detail = "number of characters differs from number of classes";
        return rep;
    }
    Cyclo w{long(order())};
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            Cyclo s;
            for (int c = 0; c < k; ++c) s += Cyclo(long(classes_[c].size())) * chars_[a][c] * chars_[b][c].conj();
            Cyclo want = a == b ? w : Cyclo();
            if (!(s == want)) {
                rep.ok = false;
                rep.detail = "row orthogonality fails for characters " + std::to_string(a) + ", " + std::to_string(b);
                return rep;
            }
        }
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            Cyclo s;
            for (int c = 0; c < k; ++c) s += chars_[c][a] * chars_[c][b].conj();
            Cyclo want = a == b ? Cyclo(long(order()), long(classes_[a].size())) : Cyclo();
            if (!(s == want)) {
                rep.ok = false;
                rep.detail = "column orthogonality fails for classes " + std::to_string(a) + ", " + std::to_string(b);
                return rep;
            }
        }
    long sq = 0;
    for (int c = 0; c < k; ++c) {
        long d = degree(c);
        if (d <= 0) {
            rep.ok = false;
            rep.detail = "nonpositive degree for character " + std::to_string(c);
            return rep;
        }
        sq += d * d;
    }
    if (sq != order()) {
        rep.ok = false;
        rep.detail = "sum of squared degrees differs from the group order";
    }
    return rep;
}

Cyclo ReflectionGroup::pair(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& v) {
    Cyclo s;
    for (size_t i = 0; i < alpha.size(); ++i)
        if (!alpha[i].is_zero() && !v[i].is_zero()) s += alpha[i] * v[i];
    return s;
}

bool ReflectionGroup::is_regular(const std::vector<Cyclo>& v) const {
    if (int(v.size()) != dim()) return false;
    for (auto& h : hyper_)
        if (pair(h.root, v).is_zero()) return false;
    return true;
}

std::vector<Cyclo> ReflectionGroup::regular_vector(uint64_t seed) const {
    std::mt19937_64 rng(seed);
    for (long range = 2;; range *= 2)
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Cyclo> v;
            for (int i = 0; i < dim(); ++i) v.push_back(Cyclo(long(rng() % (2 * range + 1)) - range));
            if (is_regular(v)) return v;
        }
}

GroupPtr ReflectionGroup::build(const GroupSpec& spec, size_t max_order) {
    auto g = std::shared_ptr<ReflectionGroup>(new ReflectionGroup());
    g->spec_ = spec;
    g->enumerate(max_order);
    g->find_reflections();
    g->build_parameters();
    g->load_characters();
    if (g->has_characters()) {
        auto rep = g->validate_characters();
        if (!rep.ok) throw GroupError("invalid character table: " + rep.detail);
    }
    return g;
}

}  // namespace cmx
