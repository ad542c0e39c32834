#pragma once

#include "cmx/cyclo.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmx {

constexpr int kMaxVars = 32;

struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Mono {
    std::array<uint8_t, kMaxVars> e{};

    int deg() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    bool is_one() const {
        for (auto v : e)
            if (v) return false;
        return true;
    }
    bool divides(const Mono& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Mono operator*(const Mono& o) const;
    Mono operator/(const Mono& o) const;  // requires divisibility
    static Mono lcm(const Mono& a, const Mono& b);
    static Mono var(int i, int pow = 1);
    friend bool operator==(const Mono&, const Mono&) = default;
    friend auto operator<=>(const Mono& a, const Mono& b) { return a.e <=> b.e; }
};

struct MonoHash {
    size_t operator()(const Mono& m) const noexcept;
};

// Named variables with a bidegree each.
class Ring {
public:
    Ring(std::vector<std::string> names, std::vector<std::pair<int, int>> bideg = {});
    int nvars() const { return int(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::pair<int, int> bideg(int i) const { return bideg_[i]; }
    int index(const std::string& name) const;  // -1 if absent
    std::pair<int, int> bidegree(const Mono& m) const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> bideg_;
    std::map<std::string, int> lookup_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(std::vector<std::string> names, std::vector<std::pair<int, int>> bideg = {});

// Sparse commutative polynomial; terms kept sorted by exponent vector.
class MPoly {
public:
    using Term = std::pair<Mono, Cyclo>;

    MPoly() = default;
    explicit MPoly(RingPtr r) : ring_(std::move(r)) {}
    MPoly(RingPtr r, const Cyclo& c);
    static MPoly var(RingPtr r, int i);
    static MPoly var(RingPtr r, const std::string& name);
    static MPoly monomial(RingPtr r, const Mono& m, const Cyclo& c = Cyclo(1));
    // terms need not be sorted or combined
    static MPoly from_terms(RingPtr r, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    Cyclo constant_term() const;
    Cyclo coeff(const Mono& m) const;
    int total_degree() const;
    int degree_in(int var) const;
    bool involves(int var) const;

    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly& operator*=(const Cyclo& c);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Cyclo& c) { return a *= c; }
    friend MPoly operator*(const Cyclo& c, MPoly a) { return a *= c; }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

    MPoly pow(int e) const;
    MPoly mul_mono(const Mono& m, const Cyclo& c) const;
    MPoly derivative(int var) const;
    // exact quotient, throws NotDivisible
    MPoly divide_exact(const MPoly& b) const;
    // images[i] is the image of variable i; all images share a target ring
    MPoly substitute(const std::vector<MPoly>& images) const;
    Cyclo evaluate(const std::vector<Cyclo>& point) const;
    // same exponents read in another ring through an index map (old var -> new var)
    MPoly rehome(RingPtr target, const std::vector<int>& var_map) const;
    MPoly map_coeffs(const std::function<Cyclo(const Cyclo&)>& f) const;

    // group terms by their exponents on vars (mask true); key keeps only those exponents
    std::map<Mono, MPoly> split(const std::vector<bool>& mask) const;
    // terms with given bidegree
    MPoly bihomogeneous_part(int a, int b) const;
    // set of bidegrees present
    std::vector<std::pair<int, int>> bidegrees() const;
    bool is_bihomogeneous() const { return bidegrees().size() <= 1; }

    // largest conductor among coefficients
    int conductor() const;
    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Term> t_;
    void canonicalize();
    MPoly divide_linear(const MPoly& b) const;
    friend class MPolyBuilder;
};

// Accumulates terms, then produces a canonical polynomial.
class MPolyBuilder {
public:
    explicit MPolyBuilder(RingPtr r) : ring_(std::move(r)) {}
    void add(const Mono& m, const Cyclo& c);
    void add(const MPoly& p, const Cyclo& scale = Cyclo(1));
    void add_product(const MPoly& p, const Mono& m, const Cyclo& c);
    MPoly build();

private:
    RingPtr ring_;
    std::vector<MPoly::Term> acc_;
};

MPoly parse_poly(const RingPtr& ring, const std::string& text);
Cyclo parse_cyclo(const std::string& text);

}  // namespace cmx
