#include "cmx/upoly.hpp"

#include <sstream>
#include <stdexcept>

namespace cmx::upoly {

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int deg(const UPoly& p) { return int(p.size()) - 1; }

UPoly add(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

UPoly mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

UPoly scale(const UPoly& a, const Cyclo& c) {
    UPoly r = a;
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    UPoly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    UPoly q(r.size() - b.size() + 1);
    Cyclo inv = b.back().inverse();
    for (int i = int(r.size()) - int(b.size()); i >= 0; --i) {
        Cyclo c = r[i + b.size() - 1] * inv;
        q[i] = c;
        if (c.is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] -= c * b[j];
    }
    r.resize(b.size() - 1);
    trim(r);
    trim(q);
    return {q, r};
}

UPoly monic(const UPoly& a) {
    if (a.empty()) return a;
    return scale(a, a.back().inverse());
}

UPoly gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

UPoly derivative(const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Cyclo(long(i));
    trim(r);
    return r;
}

Cyclo eval(const UPoly& a, const Cyclo& x) {
    Cyclo s;
    for (int i = int(a.size()) - 1; i >= 0; --i) s = s * x + a[i];
    return s;
}

UPoly shift(const UPoly& a, const Cyclo& s) {
    // Horner in polynomial arithmetic: a(x+s)
    UPoly r;
    UPoly lin = {s, Cyclo(1)};
    for (int i = int(a.size()) - 1; i >= 0; --i) {
        r = mul(r, lin);
        r = add(r, UPoly{a[i]});
    }
    return r;
}

UPoly pow(const UPoly& a, int e) {
    UPoly r{Cyclo(1)}, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& a0) {
    UPoly a = monic(a0);
    std::vector<std::pair<UPoly, int>> out;
    if (deg(a) < 1) return out;
    UPoly d = derivative(a);
    UPoly g = gcd(a, d);
    UPoly b = divmod(a, g).first;
    UPoly c = divmod(d, g).first;
    UPoly e = sub(c, derivative(b));
    int i = 1;
    while (deg(b) > 0) {
        UPoly f = gcd(b, e);
        if (deg(f) > 0) out.push_back({monic(f), i});
        b = divmod(b, f).first;
        c = divmod(e, f).first;
        e = sub(c, derivative(b));
        ++i;
    }
    return out;
}

UPoly squarefree_part(const UPoly& a) {
    UPoly r{Cyclo(1)};
    for (auto& [f, m] : squarefree_decomposition(a)) r = mul(r, f);
    return r;
}

UPoly from_rational(const std::vector<Q>& v) {
    UPoly r;
    for (auto& q : v) r.push_back(Cyclo(q));
    trim(r);
    return r;
}

std::string str(const UPoly& a, const std::string& var) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = int(a.size()) - 1; i >= 0; --i) {
        if (a[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << a[i].str() << ")";
        if (i) os << "*" << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

}  // namespace cmx::upoly
