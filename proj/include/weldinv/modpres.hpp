#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "weldinv/algebra.hpp"
#include "weldinv/diagram.hpp"
#include "weldinv/laurent.hpp"

namespace weldinv {

// Finitely presented module over Z[X1^{±1},...,Xn^{±1}], one variable per
// diagram component (var_component maps variable -> component ordinal).
struct LaurentPresentation {
    int n_generators = 0;
    int n_vars = 0;
    std::vector<std::vector<LaurentPoly>> relations;  // rows x n_generators
    std::vector<int> var_component;

    bool operator==(const LaurentPresentation&) const = default;
};

// Universal colouring module: one generator per segment, relations at
// extrema (e1 + e2 = 0), classical and virtual crossings, and arc end
// segments pinned to zero.  `ordering` permutes the variable-to-component
// assignment (identity when empty).  With eliminate set, generators carrying
// a unit coefficient in some relation are substituted away.
LaurentPresentation cm_presentation(const MorseDiagram& d,
                                    const std::vector<int>& ordering = {},
                                    bool eliminate = true);

// Alexander module: one generator per arc-segment (merged across extrema,
// virtual crossings, and over-strand passages), one relation per classical
// crossing.
LaurentPresentation alex_presentation(const MorseDiagram& d);

// Variant sensitive to virtual crossings: generators merge across extrema
// only; classical and virtual crossings both contribute relations.
LaurentPresentation alex_prime_presentation(const MorseDiagram& d);

// Sum over assignments of each variable to an element of abelian G of the
// number of E-solutions of the induced linear system.  Deterministic for any
// worker count.
mpz_class hom_count(const LaurentPresentation& p, const CrossedModule& cm,
                    int workers = 1);

// hom_count(cm_presentation(d)) == hom_count(alex_prime_presentation(mirror(d)))
// over sign(m), m <= 12.
bool mirror_relation_check(const MorseDiagram& d);

// Classical 1-component knots: single-variable relation matrix with one
// generator pinned to zero, squared up, determinant, then normalized so the
// lowest exponent is 0 and the leading coefficient positive.
LaurentPoly alexander_polynomial(const MorseDiagram& d);

// One relation per line, monomial entries as c*X1^a*X2^b; stable ordering.
std::string presentation_text(const LaurentPresentation& p);

}  // namespace weldinv
