#pragma once

#include <gmpxx.h>

#include <vector>

#include "weldinv/algebra.hpp"
#include "weldinv/diagram.hpp"

namespace weldinv {

// Group presentation; relations are words over generators, entry +i meaning
// generator i-1 and -i its inverse, each word equal to the identity.
struct FinitePresentation {
    int n_generators = 0;
    std::vector<std::vector<int>> relations;

    bool operator==(const FinitePresentation&) const = default;
};

// Knot-group presentation: one generator per arc (segments merged across
// extrema, virtual crossings, over-strand passages, and vertex legs), one
// conjugation relation per classical crossing with a fixed global handedness.
// End events impose nothing.
FinitePresentation wirtinger_presentation(const MorseDiagram& d);

// Tietze simplification that only renames or deletes: free/cyclic reduction,
// duplicate removal, and elimination of generators a relation expresses in
// the others (bounded by max_len to avoid word blow-up).
FinitePresentation simplify_presentation(const FinitePresentation& p,
                                         size_t max_len = 64);

// Number of homomorphisms into g (backtracking over generator images).
mpz_class group_hom_count(const FinitePresentation& p, GroupPtr g);

}  // namespace weldinv
