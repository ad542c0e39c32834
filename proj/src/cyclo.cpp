#include "cmx/cyclo.hpp"

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cmx {

namespace {

struct FieldData {
    int n = 1;
    int phi = 1;
    std::vector<long> poly;                  // Phi_n ascending, monic
    std::vector<std::vector<Q>> power;       // zeta^k in the power basis, k < n
};

std::vector<long> poly_div_exact(std::vector<long> a, const std::vector<long>& b) {
    // a / b for integer polynomials with b monic
    int da = int(a.size()) - 1, db = int(b.size()) - 1;
    std::vector<long> q(da - db + 1, 0);
    for (int i = da - db; i >= 0; --i) {
        long c = a[i + db];
        q[i] = c;
        for (int j = 0; j <= db; ++j) a[i + j] -= c * b[j];
    }
    return q;
}

const FieldData& field(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FieldData>> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(n);
    if (it != table.end()) return *it->second;
    auto fd = std::make_unique<FieldData>();
    fd->n = n;
    // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d
    std::vector<long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        std::vector<long> pd;
        auto jt = table.find(d);
        if (jt == table.end()) throw std::logic_error("cyclotomic table order");
        pd = jt->second->poly;
        num = poly_div_exact(num, pd);
    }
    fd->poly = num;
    fd->phi = int(num.size()) - 1;
    fd->power.resize(n);
    for (int k = 0; k < n; ++k) {
        std::vector<Q> v(fd->phi, Q(0));
        if (k < fd->phi) {
            v[k] = 1;
        } else {
            // zeta^k = zeta * zeta^(k-1)
            const auto& prev = fd->power[k - 1];
            Q top = prev[fd->phi - 1];
            for (int i = fd->phi - 1; i >= 1; --i) v[i] = prev[i - 1];
            v[0] = 0;
            for (int i = 0; i < fd->phi; ++i) v[i] -= top * fd->poly[i];
        }
        fd->power[k] = std::move(v);
    }
    auto* ptr = fd.get();
    table.emplace(n, std::move(fd));
    return *ptr;
}

constexpr int kFast = 1024;
std::array<std::atomic<const FieldData*>, kFast> fast_table{};

const FieldData& field_checked(int n) {
    if (n < 1) throw std::invalid_argument("conductor must be positive");
    if (n < kFast) {
        if (const FieldData* f = fast_table[n].load(std::memory_order_acquire)) return *f;
    }
    // divisors first, in increasing order
    for (int d = 1; d < n; ++d)
        if (n % d == 0) field(d);
    const FieldData& f = field(n);
    if (n < kFast) fast_table[n].store(&f, std::memory_order_release);
    return f;
}

}  // namespace

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

long lcm_int(long a, long b) { return a / std::gcd(a, b) * b; }

const std::vector<long>& cyclotomic_poly(int n) { return field_checked(n).poly; }

Cyclo Cyclo::raw(int n, std::vector<Q> c) {
    Cyclo r;
    r.n_ = n;
    r.c_ = std::move(c);
    r.normalize();
    return r;
}

void Cyclo::normalize() {
    if (c_.empty()) {
        n_ = 1;
        return;
    }
    bool rat = true;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) {
            rat = false;
            break;
        }
    if (rat) {
        n_ = 1;
        if (c_[0] == 0) c_.clear();
        else c_.resize(1);
    }
}

Cyclo Cyclo::root(int n, long k) {
    const auto& fd = field_checked(n);
    long kk = ((k % n) + n) % n;
    return raw(n, fd.power[kk]);
}

Cyclo Cyclo::from_coeffs(int n, const std::vector<Q>& coeffs) {
    const auto& fd = field_checked(n);
    std::vector<Q> v(fd.phi, Q(0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        const auto& p = fd.power[k % n];
        for (int i = 0; i < fd.phi; ++i)
            if (p[i] != 0) v[i] += coeffs[k] * p[i];
    }
    return raw(n, std::move(v));
}

Q Cyclo::rational() const {
    if (n_ != 1) throw std::domain_error("cyclotomic number is not rational: " + str());
    return c_.empty() ? Q(0) : c_[0];
}

void Cyclo::promote(int m) {
    if (m == n_) return;
    if (m % n_) throw std::logic_error("promote: conductor does not divide target");
    const auto& fd = field_checked(m);
    std::vector<Q> v(fd.phi, Q(0));
    int step = m / n_;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        const auto& p = fd.power[(k * step) % m];
        for (int i = 0; i < fd.phi; ++i)
            if (p[i] != 0) v[i] += c_[k] * p[i];
    }
    n_ = m;
    c_ = std::move(v);
}

std::vector<Q> Cyclo::coeffs_at(int m) const {
    Cyclo t = *this;
    if (t.c_.empty()) return std::vector<Q>(euler_phi(m), Q(0));
    t.promote(m);
    return t.c_;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    if (n_ == o.n_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    } else {
        int m = int(lcm_int(n_, o.n_));
        Cyclo b = o;
        promote(m);
        b.promote(m);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
    }
    normalize();
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    if (a.c_.empty() || b.c_.empty()) return Cyclo();
    if (a.n_ == 1) {
        Cyclo r = b;
        for (auto& q : r.c_) q *= a.c_[0];
        return r;
    }
    if (b.n_ == 1) {
        Cyclo r = a;
        for (auto& q : r.c_) q *= b.c_[0];
        return r;
    }
    if (a.n_ != b.n_) {
        int m = int(lcm_int(a.n_, b.n_));
        Cyclo x = a, y = b;
        x.promote(m);
        y.promote(m);
        return x * y;
    }
    const auto& fd = field_checked(a.n_);
    int phi = fd.phi;
    std::vector<Q> prod(2 * phi - 1, Q(0));
    for (int i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; j < phi; ++j)
            if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    std::vector<Q> v(prod.begin(), prod.begin() + phi);
    for (int k = phi; k < 2 * phi - 1; ++k) {
        if (prod[k] == 0) continue;
        const auto& p = fd.power[k % a.n_];
        for (int i = 0; i < phi; ++i)
            if (p[i] != 0) v[i] += prod[k] * p[i];
    }
    return Cyclo::raw(a.n_, std::move(v));
}

Cyclo& Cyclo::operator*=(const Cyclo& o) { return *this = *this * o; }

bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    if (a.n_ == 1 || b.n_ == 1) return false;  // normalized: rational iff conductor 1
    int m = int(lcm_int(a.n_, b.n_));
    return a.coeffs_at(m) == b.coeffs_at(m);
}

Cyclo Cyclo::inverse() const {
    if (c_.empty()) throw std::domain_error("division by zero");
    if (n_ == 1) return Cyclo(Q(1) / c_[0]);
    // extended Euclid on (Phi_n, a) over Q
    const auto& fd = field_checked(n_);
    using P = std::vector<Q>;
    auto trim = [](P& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    };
    P r0(fd.poly.begin(), fd.poly.end()), r1 = c_;
    trim(r1);
    P s0{}, s1{Q(1)};  // coefficients of a
    while (!r1.empty() && r1.size() > 1) {
        P q(r0.size() - r1.size() + 1, Q(0));
        P r = r0;
        for (int i = int(r.size()) - int(r1.size()); i >= 0; --i) {
            Q c = r[i + r1.size() - 1] / r1.back();
            q[i] = c;
            if (c == 0) continue;
            for (size_t j = 0; j < r1.size(); ++j) r[i + j] -= c * r1[j];
        }
        trim(r);
        P s(std::max(s0.size(), q.size() + s1.size()), Q(0));
        for (size_t i = 0; i < s0.size(); ++i) s[i] += s0[i];
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s[i + j] -= q[i] * s1[j];
        trim(s);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic inverse: not invertible");
    for (auto& q : s1) q /= r1[0];
    return from_coeffs(n_, s1);
}

Cyclo& Cyclo::operator/=(const Cyclo& o) { return *this = *this * o.inverse(); }

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclo r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Cyclo Cyclo::galois(long k) const {
    if (n_ == 1) return *this;
    if (std::gcd(((k % n_) + n_) % n_, long(n_)) != 1) throw std::invalid_argument("galois: k not a unit");
    std::vector<Q> v(n_, Q(0));
    for (size_t i = 0; i < c_.size(); ++i) v[((long(i) * k) % n_ + n_) % n_] += c_[i];
    return from_coeffs(n_, v);
}

int Cyclo::compare_at(const Cyclo& a, const Cyclo& b, int m) {
    auto x = a.coeffs_at(m), y = b.coeffs_at(m);
    for (size_t i = 0; i < x.size(); ++i) {
        int c = cmp(x[i], y[i]);
        if (c) return c < 0 ? -1 : 1;
    }
    return 0;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    if (n_ == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        const Q& q = c_[k];
        if (q == 0) continue;
        bool neg = q < 0;
        Q a = neg ? Q(-q) : q;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        if (k == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << "*";
        os << "E(" << n_ << ")";
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

}  // namespace cmx
