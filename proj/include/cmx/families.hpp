#pragma once

#include "cmx/center.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace cmx {

// Set partition of the irreducible characters (indices in canonical order).
struct FamilyPartition {
    std::vector<std::vector<int>> parts;
    std::string label;

    void canonicalize();
    size_t size() const { return parts.size(); }
    std::vector<size_t> part_sizes() const;  // descending
    int part_of(int chi) const;
    friend bool operator==(const FamilyPartition& a, const FamilyPartition& b) { return a.parts == b.parts; }
};

// indices grouped by equal keys, in order of first occurrence
template <class Key>
FamilyPartition fibers(const std::vector<Key>& keys, std::string label = "") {
    FamilyPartition p;
    p.label = std::move(label);
    std::vector<int> seen(keys.size(), -1);
    for (size_t i = 0; i < keys.size(); ++i) {
        if (seen[i] >= 0) continue;
        std::vector<int> part{int(i)};
        for (size_t j = i + 1; j < keys.size(); ++j)
            if (seen[j] < 0 && keys[j] == keys[i]) {
                seen[j] = int(i);
                part.push_back(int(j));
            }
        p.parts.push_back(part);
    }
    p.canonicalize();
    return p;
}

// parts sharing an element are merged, transitively
FamilyPartition meet(const FamilyPartition& p, const FamilyPartition& q);
// every part of `fine` lies inside one part of `coarse`
bool is_union_of(const FamilyPartition& coarse, const FamilyPartition& fine);

// Linear form in the K parameters, first nonzero coefficient positive and integral content 1
// when the coefficients are rational.
struct HyperplaneForm {
    std::vector<Cyclo> coeffs;

    static HyperplaneForm normalized(std::vector<Cyclo> coeffs);
    static HyperplaneForm parse(const ReflectionGroup& g, const std::string& text);
    MPoly poly(const ReflectionGroup& g) const;
    std::string str(const ReflectionGroup& g) const;
    Cyclo eval(const std::vector<Cyclo>& k) const;
    // k_{o,j} -> k_{o,-j}
    HyperplaneForm sharp(const ReflectionGroup& g) const;
    friend bool operator==(const HyperplaneForm& a, const HyperplaneForm& b) { return a.coeffs == b.coeffs; }
};

// x, y set to 0: coefficients a_w in the C ring of the group
std::vector<MPoly> omega(const Algebra& a, const PBW& z);
MPoly omega_chi(const Algebra& a, const PBW& z, int chi);
MPoly omega_chi(const Algebra& a, const std::vector<MPoly>& om, int chi);

// Parameter point, stored in K coordinates.
struct ParamPoint {
    std::vector<Cyclo> k;
    static ParamPoint from_k(std::vector<Cyclo> k) { return ParamPoint{std::move(k)}; }
    static ParamPoint from_c(const ReflectionGroup& g, const std::vector<Cyclo>& c);
    // "k1=1,k2=1" with aliases, C- or K-names; all variables of one kind must be given
    static ParamPoint parse(const ReflectionGroup& g, const std::string& text);
    std::vector<Cyclo> c_values(const ReflectionGroup& g) const;
    bool is_zero() const;
};

// Central characters of the degree-0 center generators, and everything derived from them.
class Families {
public:
    explicit Families(std::shared_ptr<const Center> z);

    const Center& center() const { return *z_; }
    const ReflectionGroup& group() const { return z_->algebra()->group(); }
    const std::vector<int>& degree0() const { return deg0_; }
    int euler_column() const { return euler_col_; }
    // Omega_chi(z_{degree0[col]}) in the C ring
    const MPoly& entry(int chi, int col) const { return table_[chi][col]; }
    const std::vector<MPoly>& row(int chi) const { return table_[chi]; }

    FamilyPartition generic() const;
    std::vector<HyperplaneForm> hyperplanes() const;
    FamilyPartition on_hyperplane(const HyperplaneForm& h) const;
    // meet of the hyperplane partitions through the point
    FamilyPartition at_point(const ParamPoint& p) const;
    // fibers of the specialized table
    FamilyPartition at_point_direct(const ParamPoint& p) const;
    // families at p whose Poisson-bracket central characters vanish; p != 0
    std::vector<std::vector<int>> cuspidal(const ParamPoint& p) const;

private:
    std::shared_ptr<const Center> z_;
    std::vector<int> deg0_;
    int euler_col_ = -1;
    std::vector<std::vector<MPoly>> table_;    // C ring
    std::vector<std::vector<MPoly>> table_k_;  // K ring
    mutable std::mutex mu_;
    mutable std::optional<std::vector<HyperplaneForm>> hyper_;
    mutable std::optional<std::vector<std::pair<std::pair<int, int>, MPoly>>> brackets_;
};

// Rouquier data supplied by the user for the refinement test.
struct RouquierData {
    bool sharp_convention = false;  // forms and families already given for k^sharp
    FamilyPartition generic;
    std::vector<std::pair<HyperplaneForm, FamilyPartition>> essential;
};
RouquierData parse_rouquier(const ReflectionGroup& g, const std::string& json_text);

struct MartinoVerdict {
    std::string hyperplane;  // empty for the generic test
    std::string compared_with;
    bool ok = false;
};
struct MartinoReport {
    bool ok = true;
    std::vector<MartinoVerdict> verdicts;
};
// each CM family a union of Rouquier families (or equal to one, when `equality`)
MartinoReport martino_check(const Families& f, const RouquierData& r, bool equality = false);

}  // namespace cmx
