#ifndef PARACYC_ZOO_HPP
#define PARACYC_ZOO_HPP

#include "paracyc/cyclic.hpp"

#include <string>
#include <vector>

namespace paracyc {

// Finite-dimensional unital algebra presented by structure constants, with
// a distinguished automorphism.  product[i][j] is the coordinate vector of
// e_i * e_j.
struct AlgebraPresentation {
    std::string name;
    int dim = 0;
    std::vector<std::vector<Vec>> product;
    Vec unit;
    SparseMat sigma;  // automorphism matrix

    ValidationReport validate_presentation() const;
};

// Finite group by Cayley table plus a distinguished central element phi.
struct GroupPresentation {
    std::string name;
    int order = 0;
    std::vector<std::vector<int>> table;  // table[i][j] = i * j
    int identity = 0;
    int phi = 0;

    ValidationReport validate_presentation() const;
    int inv(int g) const;
};

// Structure of the twisted module of a unital algebra: faces multiply
// adjacent tensor slots (the end face wraps through sigma), degeneracies
// insert the unit, t rotates the last slot to the front through sigma.
CyclicStructure algebra_structure(const AlgebraPresentation& alg, int max_degree);

// Structure of the phi-twisted module of a group: faces are omissions,
// degeneracies duplicate a slot, t rotates and applies phi^{-1}.
CyclicStructure group_structure(const GroupPresentation& grp, int max_degree);

// Named generators:
//   trivial-Q        C_m = Q, every operator the scalar 1
//   dual-numbers     Q[x]/(x^2), identity automorphism (cyclic)
//   sign-twisted     Q[x]/(x^2-1) with x -> -x   (T^2 = 1, quasi)
//   group-Z2-phi-g   Z/2 with phi = g            (T^2 = 1, quasi)
//   group-Z3-phi-g   Z/3 with phi = g            (T^3 = 1, quasi)
//   group-Z2-phi-e   Z/2 with phi = e            (honest cyclic control)
CyclicStructure zoo(const std::string& name, int max_degree);

std::vector<std::string> zoo_names();

// T^r = 1 detection for small r; 0 when none found within the bound.
int cyclic_order_of_T(const GradedMap& T, int bound = 16);

// Q(X) = (1 + X + ... + X^{r-1}) / r
std::vector<Rat> averaging_polynomial(int r);

} // namespace paracyc

#endif
