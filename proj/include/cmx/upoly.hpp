#pragma once

#include "cmx/cyclo.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cmx {

// Univariate polynomial, ascending coefficients, no trailing zeros.
using UPoly = std::vector<Cyclo>;

namespace upoly {

void trim(UPoly& p);
int deg(const UPoly& p);  // -1 for zero
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
UPoly scale(const UPoly& a, const Cyclo& c);
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
UPoly gcd(UPoly a, UPoly b);  // monic
UPoly derivative(const UPoly& a);
Cyclo eval(const UPoly& a, const Cyclo& x);
UPoly shift(const UPoly& a, const Cyclo& s);  // a(x + s)
UPoly pow(const UPoly& a, int e);
// Yun: a = lc * prod f_i^i with f_i monic squarefree, coprime
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& a);
UPoly squarefree_part(const UPoly& a);
UPoly from_rational(const std::vector<Q>& v);
std::string str(const UPoly& a, const std::string& var = "x");

}  // namespace upoly

// Irreducible factorization over Q(zeta_n) (n = 1 for Q): monic factors with multiplicities.
std::vector<std::pair<UPoly, int>> factor(const UPoly& f, int n);

// Irreducible factors of a primitive squarefree integer polynomial.
std::vector<std::vector<mpz_class>> factor_squarefree_integer(const std::vector<mpz_class>& f);

// Rational roots of a polynomial over Q (each once).
std::vector<Q> rational_roots(const UPoly& f);

// Norm from Q(zeta_n) down to Q; n = 0 uses the conductor of a.
Q norm(const Cyclo& a, int n = 0);

}  // namespace cmx
