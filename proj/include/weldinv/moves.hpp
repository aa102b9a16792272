#pragma once

#include <cstdint>
#include <vector>

#include "weldinv/diagram.hpp"

namespace weldinv {

enum class MoveKind {
    R1,
    R2,
    R3,
    VR1,
    VR2,
    VR3,
    Mixed,  // a strand slides virtually past a classical crossing
    F1,     // overpass slides across a virtual crossing (welded move)
    ArcEndSlide,
    GraphMove1,  // bend/unbend a vertex leg around an extremum
    GraphMove2,  // merge/split stacked vertices
    GraphMove3,  // strand slides over a vertex
    GraphMove4,  // strand slides under a vertex (classical once, virtual rest)
    GraphMove5,  // unary pass-through vertex
    GraphMove6,  // capped end into a vertex is an extremum
    GraphMove7,  // strand slides virtually past a vertex
    YetterExchange,
    YetterCancel,
    YetterCrossSlide,
};

const char* move_name(MoveKind m);
const std::vector<MoveKind>& all_move_kinds();

// Addresses one concrete rewrite: the event index where the pattern starts
// (insertion point for growing rewrites), the strand position for inserts,
// the direction, and the variant within the family.
struct Site {
    int index = 0;
    int pos = 0;
    bool forward = true;
    int variant = 0;
    bool operator==(const Site&) const = default;
};

// Rewrites the diagram at the site; throws std::invalid_argument when the
// pattern does not match or the result fails validation.
MorseDiagram apply_move(const MorseDiagram& d, MoveKind m, const Site& site);

// Exactly the sites where apply_move succeeds, in deterministic order.
std::vector<Site> enumerate_sites(const MorseDiagram& d, MoveKind m);

// Seeded random walk over all move kinds: each step picks one applicable
// rewrite uniformly (skipping the step if none applies). The result is
// welded-equivalent to the input by construction.
MorseDiagram random_equivalent(const MorseDiagram& d, int steps, std::uint64_t seed);

}  // namespace weldinv
