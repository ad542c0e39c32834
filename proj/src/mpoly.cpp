#include "cmx/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace cmx {

Mono Mono::operator*(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) {
        unsigned s = unsigned(e[i]) + o.e[i];
        if (s > 255) throw std::overflow_error("monomial exponent overflow");
        r.e[i] = uint8_t(s);
    }
    return r;
}

Mono Mono::operator/(const Mono& o) const {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) {
        if (o.e[i] > e[i]) throw std::logic_error("monomial division");
        r.e[i] = uint8_t(e[i] - o.e[i]);
    }
    return r;
}

Mono Mono::lcm(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
}

Mono Mono::var(int i, int pow) {
    if (i < 0 || i >= kMaxVars) throw std::out_of_range("variable index");
    Mono m;
    m.e[i] = uint8_t(pow);
    return m;
}

size_t MonoHash::operator()(const Mono& m) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (auto v : m.e) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return size_t(h);
}

Ring::Ring(std::vector<std::string> names, std::vector<std::pair<int, int>> bideg)
    : names_(std::move(names)), bideg_(std::move(bideg)) {
    if (int(names_.size()) > kMaxVars) throw std::length_error("too many variables");
    bideg_.resize(names_.size(), {0, 0});
    for (int i = 0; i < int(names_.size()); ++i) {
        if (!lookup_.emplace(names_[i], i).second) throw std::invalid_argument("duplicate variable " + names_[i]);
    }
}

int Ring::index(const std::string& name) const {
    auto it = lookup_.find(name);
    return it == lookup_.end() ? -1 : it->second;
}

std::pair<int, int> Ring::bidegree(const Mono& m) const {
    int a = 0, b = 0;
    for (int i = 0; i < nvars(); ++i) {
        a += m.e[i] * bideg_[i].first;
        b += m.e[i] * bideg_[i].second;
    }
    return {a, b};
}

RingPtr make_ring(std::vector<std::string> names, std::vector<std::pair<int, int>> bideg) {
    return std::make_shared<const Ring>(std::move(names), std::move(bideg));
}

// ---------------------------------------------------------------------------

MPoly::MPoly(RingPtr r, const Cyclo& c) : ring_(std::move(r)) {
    if (!c.is_zero()) t_.push_back({Mono{}, c});
}

MPoly MPoly::var(RingPtr r, int i) {
    MPoly p(std::move(r));
    p.t_.push_back({Mono::var(i), Cyclo(1)});
    return p;
}

MPoly MPoly::var(RingPtr r, const std::string& name) {
    int i = r->index(name);
    if (i < 0) throw std::invalid_argument("unknown variable " + name);
    return var(std::move(r), i);
}

MPoly MPoly::monomial(RingPtr r, const Mono& m, const Cyclo& c) {
    MPoly p(std::move(r));
    if (!c.is_zero()) p.t_.push_back({m, c});
    return p;
}

MPoly MPoly::from_terms(RingPtr r, std::vector<Term> terms) {
    MPoly p(std::move(r));
    p.t_ = std::move(terms);
    p.canonicalize();
    return p;
}

void MPoly::canonicalize() {
    std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    size_t out = 0;
    for (size_t i = 0; i < t_.size();) {
        size_t j = i + 1;
        Cyclo c = std::move(t_[i].second);
        while (j < t_.size() && t_[j].first == t_[i].first) {
            c += t_[j].second;
            ++j;
        }
        if (!c.is_zero()) {
            t_[out].first = t_[i].first;
            t_[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    t_.resize(out);
}

Cyclo MPoly::constant_term() const { return coeff(Mono{}); }

Cyclo MPoly::coeff(const Mono& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, const Mono& b) { return a.first < b; });
    if (it != t_.end() && it->first == m) return it->second;
    return Cyclo();
}

int MPoly::total_degree() const {
    int d = -1;
    for (auto& t : t_) d = std::max(d, t.first.deg());
    return d;
}

int MPoly::degree_in(int var) const {
    int d = -1;
    for (auto& t : t_) d = std::max(d, int(t.first.e[var]));
    return d;
}

bool MPoly::involves(int var) const {
    for (auto& t : t_)
        if (t.first.e[var]) return true;
    return false;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.t_.empty()) return *this;
    if (!ring_) ring_ = o.ring_;
    if (t_.empty()) {
        t_ = o.t_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
        if (j == o.t_.size() || (i < t_.size() && t_[i].first < o.t_[j].first)) {
            out.push_back(std::move(t_[i++]));
        } else if (i == t_.size() || o.t_[j].first < t_[i].first) {
            out.push_back(o.t_[j++]);
        } else {
            Cyclo c = t_[i].second + o.t_[j].second;
            if (!c.is_zero()) out.push_back({t_[i].first, std::move(c)});
            ++i;
            ++j;
        }
    }
    t_ = std::move(out);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly& MPoly::operator*=(const Cyclo& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& t : t_) t.second *= c;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(a.ring_ ? a.ring_ : b.ring_);
    if (a.t_.empty() || b.t_.empty()) return r;
    if (b.t_.size() == 1) return a.mul_mono(b.t_[0].first, b.t_[0].second);
    if (a.t_.size() == 1) return b.mul_mono(a.t_[0].first, a.t_[0].second);
    std::unordered_map<Mono, Cyclo, MonoHash> acc;
    acc.reserve(a.t_.size() * b.t_.size());
    for (auto& x : a.t_)
        for (auto& y : b.t_) {
            auto [it, ins] = acc.try_emplace(x.first * y.first);
            it->second += x.second * y.second;
        }
    r.t_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.t_.push_back({m, std::move(c)});
    std::sort(r.t_.begin(), r.t_.end(), [](const MPoly::Term& p, const MPoly::Term& q) { return p.first < q.first; });
    return r;
}

MPoly MPoly::mul_mono(const Mono& m, const Cyclo& c) const {
    MPoly r(ring_);
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (auto& t : t_) r.t_.push_back({t.first * m, c.is_one() ? t.second : t.second * c});
    // multiplying by a monomial preserves the lexicographic order of exponent arrays
    return r;
}

MPoly MPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    MPoly r(ring_, Cyclo(1)), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

MPoly MPoly::derivative(int var) const {
    MPoly r(ring_);
    for (auto& t : t_) {
        int k = t.first.e[var];
        if (!k) continue;
        Mono m = t.first;
        m.e[var] = uint8_t(k - 1);
        r.t_.push_back({m, t.second * Cyclo(long(k))});
    }
    r.canonicalize();
    return r;
}

MPoly MPoly::divide_linear(const MPoly& b) const {
    // b = beta*v + rest, rest free of v, v the highest-priority variable of b
    int v = -1;
    for (int i = 0; i < kMaxVars && v < 0; ++i)
        for (auto& t : b.t_)
            if (t.first.e[i]) {
                v = i;
                break;
            }
    Cyclo beta = b.coeff(Mono::var(v));
    Cyclo inv_beta = beta.inverse();
    MPoly rest = b - MPoly::monomial(b.ring_, Mono::var(v), beta);
    int top = degree_in(v);
    std::vector<bool> mask(kMaxVars, false);
    mask[v] = true;
    auto parts = split(mask);  // key: v^j
    std::vector<MPoly> a(top + 1, MPoly(ring_));
    for (auto& [k, p] : parts) a[k.e[v]] = p;
    // a_j = beta q_{j-1} + rest q_j, q_top = 0
    std::vector<MPoly> q(top + 1, MPoly(ring_));
    MPoly carry(ring_);  // rest * q_j
    for (int j = top; j >= 1; --j) {
        MPoly num = a[j] - carry;
        q[j - 1] = num * inv_beta;
        carry = rest * q[j - 1];
    }
    if (!(a[0] - carry).is_zero()) throw NotDivisible("polynomial not divisible by linear form");
    MPolyBuilder out(ring_);
    for (int j = 0; j < top; ++j) out.add_product(q[j], Mono::var(v, j), Cyclo(1));
    return out.build();
}

MPoly MPoly::divide_exact(const MPoly& b) const {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return MPoly(ring_);
    if (b.is_constant()) return *this * b.constant_term().inverse();
    bool linear = true;
    for (auto& t : b.t_)
        if (t.first.deg() != 1) linear = false;
    if (linear) return divide_linear(b);
    // generic: lexicographic long division on the largest exponent array
    std::map<Mono, Cyclo> rem;
    for (auto& t : t_) rem.emplace(t.first, t.second);
    const Term& lb = b.t_.back();
    Cyclo inv = lb.second.inverse();
    MPolyBuilder q(ring_);
    while (!rem.empty()) {
        auto it = std::prev(rem.end());
        if (!lb.first.divides(it->first)) throw NotDivisible("polynomial not divisible");
        Mono m = it->first / lb.first;
        Cyclo c = it->second * inv;
        q.add(m, c);
        for (auto& t : b.t_) {
            Mono mm = t.first * m;
            auto [jt, ins] = rem.try_emplace(mm);
            jt->second -= t.second * c;
            if (jt->second.is_zero()) rem.erase(jt);
        }
    }
    return q.build();
}

MPoly MPoly::substitute(const std::vector<MPoly>& images) const {
    RingPtr target;
    for (auto& im : images)
        if (im.ring_) {
            target = im.ring_;
            break;
        }
    if (!target) target = ring_;
    int nv = ring_ ? ring_->nvars() : 0;
    std::vector<std::vector<MPoly>> powers(nv);
    auto power = [&](int v, int k) -> const MPoly& {
        auto& pv = powers[v];
        if (pv.empty()) pv.push_back(MPoly(target, Cyclo(1)));
        while (int(pv.size()) <= k) pv.push_back(pv.back() * images[v]);
        return pv[k];
    };
    // group by all but the last variable would be faster; plain expansion suffices here
    MPolyBuilder out(target);
    for (auto& t : t_) {
        MPoly term(target, t.second);
        for (int v = 0; v < nv && !term.is_zero(); ++v)
            if (t.first.e[v]) term = term * power(v, t.first.e[v]);
        out.add(term);
    }
    return out.build();
}

Cyclo MPoly::evaluate(const std::vector<Cyclo>& point) const {
    Cyclo s;
    for (auto& t : t_) {
        Cyclo c = t.second;
        for (int v = 0; v < kMaxVars; ++v)
            if (t.first.e[v]) c *= point.at(v).pow(t.first.e[v]);
        s += c;
    }
    return s;
}

MPoly MPoly::rehome(RingPtr target, const std::vector<int>& var_map) const {
    MPoly r(target);
    r.t_.reserve(t_.size());
    for (auto& t : t_) {
        Mono m;
        for (int v = 0; v < kMaxVars; ++v) {
            if (!t.first.e[v]) continue;
            if (v >= int(var_map.size()) || var_map[v] < 0) throw std::invalid_argument("rehome: unmapped variable");
            m.e[var_map[v]] = uint8_t(m.e[var_map[v]] + t.first.e[v]);
        }
        r.t_.push_back({m, t.second});
    }
    r.canonicalize();
    return r;
}

MPoly MPoly::map_coeffs(const std::function<Cyclo(const Cyclo&)>& f) const {
    MPoly r(ring_);
    for (auto& t : t_) r.t_.push_back({t.first, f(t.second)});
    r.canonicalize();
    return r;
}

std::map<Mono, MPoly> MPoly::split(const std::vector<bool>& mask) const {
    std::map<Mono, std::vector<Term>> groups;
    for (auto& t : t_) {
        Mono key, rest = t.first;
        for (int v = 0; v < kMaxVars && v < int(mask.size()); ++v)
            if (mask[v]) {
                key.e[v] = t.first.e[v];
                rest.e[v] = 0;
            }
        groups[key].push_back({rest, t.second});
    }
    std::map<Mono, MPoly> out;
    for (auto& [k, ts] : groups) {
        MPoly p(ring_);
        p.t_ = std::move(ts);
        p.canonicalize();
        out.emplace(k, std::move(p));
    }
    return out;
}

MPoly MPoly::bihomogeneous_part(int a, int b) const {
    MPoly r(ring_);
    for (auto& t : t_)
        if (ring_->bidegree(t.first) == std::make_pair(a, b)) r.t_.push_back(t);
    return r;
}

std::vector<std::pair<int, int>> MPoly::bidegrees() const {
    std::set<std::pair<int, int>> s;
    for (auto& t : t_) s.insert(ring_->bidegree(t.first));
    return {s.begin(), s.end()};
}

int MPoly::conductor() const {
    long n = 1;
    for (auto& t : t_) n = lcm_int(n, t.second.conductor());
    return int(n);
}

std::string MPoly::str() const {
    if (t_.empty()) return "0";
    // display order: descending total degree, then descending exponent arrays
    std::vector<const Term*> order;
    for (auto& t : t_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
        int da = a->first.deg(), db = b->first.deg();
        if (da != db) return da > db;
        return a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : order) {
        const Cyclo& c = t->second;
        std::string mono;
        for (int v = 0; v < kMaxVars; ++v) {
            int k = t->first.e[v];
            if (!k) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->name(v);
            if (k > 1) mono += "^" + std::to_string(k);
        }
        std::string cs;
        bool neg = false;
        if (c.is_rational()) {
            Q q = c.rational();
            neg = q < 0;
            if (neg) q = -q;
            if (q != 1 || mono.empty()) cs = q.get_str();
        } else {
            cs = "(" + c.str() + ")";
        }
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        os << cs;
        if (!cs.empty() && !mono.empty()) os << "*";
        os << mono;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

void MPolyBuilder::add(const Mono& m, const Cyclo& c) {
    if (!c.is_zero()) acc_.push_back({m, c});
}

void MPolyBuilder::add(const MPoly& p, const Cyclo& scale) {
    if (scale.is_zero()) return;
    for (auto& t : p.terms()) acc_.push_back({t.first, scale.is_one() ? t.second : t.second * scale});
}

void MPolyBuilder::add_product(const MPoly& p, const Mono& m, const Cyclo& c) {
    if (c.is_zero()) return;
    for (auto& t : p.terms()) acc_.push_back({t.first * m, c.is_one() ? t.second : t.second * c});
}

MPoly MPolyBuilder::build() {
    MPoly p(ring_);
    p.t_ = std::move(acc_);
    acc_.clear();
    p.canonicalize();
    return p;
}

// ---------------------------------------------------------------------------
// parsing: sums of products of rationals, E(n), variables, powers, parentheses

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    RingPtr ring;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + what + " in \"" + s + "\"");
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long integer() {
        skip();
        size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (st == pos) fail("expected integer");
        return std::stol(s.substr(st, pos - st));
    }
    MPoly constant(const Cyclo& c) { return MPoly(ring, c); }

    MPoly expr() {
        skip();
        MPoly acc(ring);
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        MPoly t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else break;
        }
        return acc;
    }
    MPoly term() {
        MPoly acc = unary();
        for (;;) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                MPoly d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division by non-constant");
                acc *= d.constant_term().inverse();
            } else {
                break;
            }
        }
        return acc;
    }
    MPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        MPoly b = primary();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer();
            if (neg) {
                if (!b.is_constant() || b.is_zero()) fail("negative power of non-constant");
                return constant(b.constant_term().pow(-e));
            }
            b = b.pow(int(e));
        }
        return b;
    }
    MPoly primary() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        char ch = s[pos];
        if (ch == '(') {
            ++pos;
            MPoly e = expr();
            if (!eat(')')) fail("expected )");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return constant(Cyclo(Q(mpz_class(s.substr(st, pos - st)))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            size_t st = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string id = s.substr(st, pos - st);
            if (id == "E") {
                skip();
                if (pos < s.size() && s[pos] == '(') {
                    ++pos;
                    long n = integer();
                    if (!eat(')')) fail("expected ) after E(n");
                    return constant(Cyclo::root(int(n), 1));
                }
            }
            if (!ring) fail("unknown identifier " + id);
            int v = ring->index(id);
            if (v < 0) fail("unknown variable " + id);
            return MPoly::var(ring, v);
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}  // namespace

MPoly parse_poly(const RingPtr& ring, const std::string& text) {
    Parser p{text, 0, ring};
    MPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

Cyclo parse_cyclo(const std::string& text) {
    static const RingPtr empty = make_ring({});
    MPoly p = parse_poly(empty, text);
    if (!p.is_constant()) throw std::invalid_argument("not a constant: " + text);
    return p.constant_term();
}

}  // namespace cmx
