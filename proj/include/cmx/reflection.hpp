#pragma once

#include "cmx/matrix.hpp"
#include "cmx/mpoly.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

struct GroupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw group data as read from a JSON file.
struct GroupSpec {
    std::string name;
    int dim = 0;
    int conductor = 1;
    std::vector<Mat> generators;
    std::vector<std::vector<int>> class_words;       // words in generator indices
    std::vector<std::vector<Cyclo>> characters;      // [irreducible][listed class]
    std::map<std::string, std::string> parameters;   // CLI aliases, e.g. k1 -> K1_1
    std::string canonical;                           // canonical JSON text
};

GroupSpec parse_group_spec(const std::string& json_text);
GroupSpec load_group_spec(const std::string& path);
// directory of shipped groups; CHEREDNIK_GROUPS overrides
std::string groups_dir();
// a shipped group name or a path to a JSON file
GroupSpec find_group(const std::string& name_or_path);

struct Reflection {
    int elem = 0;
    std::vector<Cyclo> root;    // alpha_s in V*, first nonzero entry 1
    std::vector<Cyclo> coroot;  // alpha_s^vee in V, first nonzero entry 1
    Cyclo eps;                  // nontrivial eigenvalue, = det
    int cls = 0;                // index of the C-variable
    int hyperplane = 0;
};

struct Hyperplane {
    std::vector<Cyclo> root;
    std::vector<Cyclo> coroot;
    int order = 0;                 // e_H
    int orbit = 0;
    std::vector<int> stabilizer;   // elements of W_H, identity first
};

struct HyperplaneOrbit {
    std::vector<int> hyperplanes;
    int order = 0;
};

struct ValidationReport {
    bool ok = true;
    std::string detail;
};

class ReflectionGroup;
using GroupPtr = std::shared_ptr<const ReflectionGroup>;

class ReflectionGroup {
public:
    static GroupPtr build(const GroupSpec& spec, size_t max_order = 20000);

    const GroupSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    int dim() const { return spec_.dim; }
    int conductor() const { return spec_.conductor; }
    int order() const { return int(elems_.size()); }

    const Mat& elem(int i) const { return elems_[i]; }
    int index_of(const Mat& m) const;  // -1 if not an element
    int mul(int a, int b) const { return table_[size_t(a) * elems_.size() + b]; }
    int inv(int a) const { return inv_[a]; }
    const Cyclo& det(int a) const { return det_[a]; }
    int eval_word(const std::vector<int>& word) const;

    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_of(int a) const { return class_of_[a]; }

    const std::vector<Reflection>& reflections() const { return refl_; }
    // reflection index for an element, -1 otherwise
    int reflection_index(int elem) const { return refl_of_[elem]; }
    // conjugacy classes of reflections; class k is the variable C{k+1}
    const std::vector<std::vector<int>>& reflection_classes() const { return refl_classes_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyper_; }
    const std::vector<HyperplaneOrbit>& orbits() const { return orbits_; }

    // parameter variables
    int num_c() const { return int(refl_classes_.size()); }
    std::vector<std::string> c_names() const;
    std::vector<std::string> k_names() const;  // K{o}_{j}, j = 1..e-1
    RingPtr c_ring() const { return c_ring_; }
    RingPtr k_ring() const { return k_ring_; }
    // C_k as a linear form in the K ring
    const std::vector<MPoly>& c_in_k() const { return c_in_k_; }
    // K_{o,j} (j >= 1, in k_names order) as linear forms in the C ring
    const std::vector<MPoly>& k_in_c() const { return k_in_c_; }
    // polynomial over parameters: any ring whose variable names include C- or K-names
    MPoly c_to_k(const MPoly& f) const;
    MPoly k_to_c(const MPoly& f) const;
    // resolve alias or K/C name to (is_k, variable index)
    std::pair<bool, int> parameter(const std::string& name) const;

    // characters in canonical order: by degree, then value-lexicographic
    bool has_characters() const { return !chars_.empty(); }
    int num_characters() const { return int(chars_.size()); }
    const std::vector<Cyclo>& character(int chi) const { return chars_[chi]; }  // per class
    Cyclo chi(int chi, int elem) const { return chars_[chi][class_of_[elem]]; }
    int degree(int chi) const;
    const std::string& label(int chi) const { return labels_[chi]; }
    int character_by_label(const std::string& l) const;
    ValidationReport validate_characters() const;

    // v in V with alpha_H(v) != 0 for every hyperplane
    std::vector<Cyclo> regular_vector(uint64_t seed) const;
    bool is_regular(const std::vector<Cyclo>& v) const;
    // <alpha, v> for a form alpha in V* and v in V
    static Cyclo pair(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& v);

private:
    GroupSpec spec_;
    std::vector<Mat> elems_;
    std::map<std::vector<Q>, int> index_;
    std::vector<int> table_, inv_;
    std::vector<Cyclo> det_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
    std::vector<Reflection> refl_;
    std::vector<int> refl_of_;
    std::vector<std::vector<int>> refl_classes_;
    std::vector<Hyperplane> hyper_;
    std::vector<HyperplaneOrbit> orbits_;
    RingPtr c_ring_, k_ring_;
    std::vector<MPoly> c_in_k_, k_in_c_;
    std::vector<std::vector<Cyclo>> chars_;
    std::vector<std::string> labels_;

    std::vector<Q> key(const Mat& m) const;
    void enumerate(size_t max_order);
    void find_reflections();
    void build_parameters();
    void load_characters();
};

// first nonzero entry scaled to 1
std::vector<Cyclo> normalize_first(std::vector<Cyclo> v);

}  // namespace cmx
