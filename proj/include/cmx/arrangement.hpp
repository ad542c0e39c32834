#pragma once

#include "cmx/cyclo.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

class Families;

struct ArrangementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Central real arrangement given by primitive integral linear forms.
struct RealArrangement {
    int dim = 0;
    std::vector<std::vector<Q>> forms;
    std::vector<int> orbit_orders;  // e_Omega per hyperplane orbit
    std::string name;

    // scales forms to primitive integers, first nonzero positive; rejects zero and proportional forms
    void normalize();
    static RealArrangement from_json(const std::string& text);
    static RealArrangement load(const std::string& path);
    std::string to_json() const;
    // Calogero-Moser hyperplanes of a group, in K coordinates
    static RealArrangement from_families(const Families& f);
};

// flats as sorted sets of the forms vanishing on them, grouped by rank
std::vector<std::vector<std::vector<int>>> intersection_lattice(const RealArrangement& a);
// sum over flats X of |mu(X)| t^rank(X), ascending coefficients
std::vector<long> poincare_polynomial(const RealArrangement& a);
std::string poincare_str(const std::vector<long>& p);
// Poincare polynomial at t = 1
long chamber_count(const RealArrangement& a);
// distinct sign vectors of interior points built from intersection rays; rank at most 3
long chamber_count_by_signs(const RealArrangement& a);
// chambers / prod e_Omega!, an integer
long qft_count(const RealArrangement& a);

// directory of shipped arrangement files
std::string arrangements_dir();

}  // namespace cmx
