#pragma once

#include "cmx/families.hpp"
#include "cmx/upoly.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cmx {

struct CellError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// D_y at (c, v): sum over reflections of eps(s) c_s <y, alpha_s> / alpha_s(v) times s.
struct GaudinMatrix {
    Mat m;
    std::vector<Cyclo> y, v;
    int rep = -1;  // -1: group algebra with basis the elements; else the isotypic ideal of rep
};

// Left translation by sum_w a_w w on the group algebra, basis e_w in element order.
Mat left_translation(const ReflectionGroup& g, const std::vector<Cyclo>& a);
Mat right_translation(const ReflectionGroup& g, int w);
// coefficients a_w of D_y
std::vector<Cyclo> gaudin_element(const ReflectionGroup& g, const std::vector<Cyclo>& c, const std::vector<Cyclo>& y,
                                  const std::vector<Cyclo>& v);
// rep = -1 for the regular representation; otherwise D on W e_chi, which is chi(1) copies of chi
GaudinMatrix gaudin_matrix(const ReflectionGroup& g, const ParamPoint& p, const std::vector<Cyclo>& y,
                           const std::vector<Cyclo>& v, int rep = -1);

struct CellularCharacter {
    std::vector<long> mult;  // per irreducible character
    UPoly factor;            // Pi_i, monic irreducible
    int defect = 1;          // deg Pi_i
    int power = 1;           // multiplicity of Pi_i in the characteristic polynomial
    int dim = 0;             // dimension of the generalized eigenspace
};

struct CellOptions {
    int extra_conductor = 1;  // compute over Q(zeta_{lcm(conductor, extra)})
    int max_retries = 32;
    int witnesses = 2;        // extra draws bounding the generic number of distinct eigenvalues
};

struct CellularResult {
    std::vector<CellularCharacter> chars;
    std::vector<Cyclo> y, v;
    int attempts = 0;
    UPoly charpoly;
    // distinct multiplicity vectors, sorted
    std::vector<std::vector<long>> distinct() const;
};

CellularResult cellular_characters(const ReflectionGroup& g, const ParamPoint& p, uint64_t seed,
                                   const CellOptions& opt = {});
// sum_i deg(Pi_i) gamma_i is the regular character
bool verify_sum_identity(const ReflectionGroup& g, const CellularResult& r);

// Multiplicity of chi in each cellular character, computed on the representation of chi alone.
struct RepMultiplicity {
    UPoly factor;
    long mult = 0;
};
std::vector<RepMultiplicity> rep_multiplicities(const ReflectionGroup& g, const ParamPoint& p, int chi,
                                                const std::vector<Cyclo>& y, const std::vector<Cyclo>& v,
                                                const CellOptions& opt = {});
// same, drawing (y, v) from the seed with the genericity test on the representation
std::vector<RepMultiplicity> rep_multiplicities(const ReflectionGroup& g, const ParamPoint& p, int chi,
                                                uint64_t seed, const CellOptions& opt = {});

}  // namespace cmx
