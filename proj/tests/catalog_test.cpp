#include <stdexcept>

#include "doctest.h"
#include "weldinv/colouring.hpp"
#include "weldinv/diagram.hpp"

using namespace weldinv;

TEST_CASE("catalog names build valid diagrams") {
    auto names = catalog_names();
    CHECK(names.size() == 22);
    for (const std::string& n : names) {
        CAPTURE(n);
        bool parameterized = n == "Kn" || n == "An" || n == "Pn" || n == "PnArc";
        MorseDiagram d = parameterized ? catalog(n, 3) : catalog(n);
        CHECK(is_valid(d));
    }
    CHECK_THROWS_AS(catalog("nonesuch"), std::invalid_argument);
}

TEST_CASE("parameterized families") {
    CHECK(catalog("Kn", 3) == catalog("T31"));
    CHECK(catalog("Kn", 5) == catalog("K51"));
    CHECK(catalog("An", 3) == catalog("T31arc"));
    CHECK(catalog("Pn", 1) == catalog("H"));
    for (const char* n : {"Kn", "An", "Pn", "PnArc"}) {
        CAPTURE(n);
        CHECK_THROWS_AS(catalog(n), std::invalid_argument);      // n defaulted to 0
        CHECK_THROWS_AS(catalog(n, 2), std::invalid_argument);   // even
        CHECK_THROWS_AS(catalog(n, -3), std::invalid_argument);  // negative
    }
}

TEST_CASE("catalog shapes") {
    struct Row {
        const char* name;
        DiagramKind kind;
        int components;
    };
    const Row rows[] = {
        {"O", DiagramKind::Knot, 1},    {"O2", DiagramKind::Knot, 2},
        {"L", DiagramKind::Knot, 2},    {"H", DiagramKind::Knot, 2},
        {"HA", DiagramKind::Arc, 2},    {"T31", DiagramKind::Knot, 1},
        {"T31arc", DiagramKind::Arc, 1}, {"S", DiagramKind::Knot, 1},
        {"F41", DiagramKind::Knot, 1},  {"F41arc", DiagramKind::Arc, 1},
        {"K51", DiagramKind::Knot, 1},  {"K51arc", DiagramKind::Arc, 1},
        {"K52", DiagramKind::Knot, 1},  {"K52arc", DiagramKind::Arc, 1},
        {"Q1", DiagramKind::Knot, 3},   {"Q2", DiagramKind::Knot, 3},
        {"Q3", DiagramKind::Knot, 3},   {"VA", DiagramKind::Arc, 1},
    };
    for (const Row& r : rows) {
        CAPTURE(r.name);
        MorseDiagram d = catalog(r.name);
        CHECK(kind_of(d) == r.kind);
        CHECK(component_count(d) == r.components);
    }
}

TEST_CASE("three-component links are separated") {
    CrossedModule a3 = make_sign_module(3);
    CHECK(invariant(catalog("Q1"), a3).value.v == 66);
    CHECK(invariant(catalog("Q2"), a3).value.v == 78);
    CHECK(invariant(catalog("Q3"), a3).value.v == 120);
    // ... but share the counting invariant
    GroupPtr s3 = make_symmetric_group(3);
    mpz_class c = counting_invariant(catalog("Q1"), s3);
    CHECK(counting_invariant(catalog("Q2"), s3) == c);
    CHECK(counting_invariant(catalog("Q3"), s3) == c);
}

TEST_CASE("handle closure of the trefoil arc") {
    MorseDiagram s = catalog("S");
    CHECK(s == add_handle(catalog("T31arc")));
    CHECK(kind_of(s) == DiagramKind::Knot);
    CHECK(component_count(s) == 1);
    // distinguished from the plain trefoil by a non-abelian module,
    // not by the sign module
    CrossedModule a3 = make_sign_module(3);
    CrossedModule g23 = make_gl_module(2, 3);
    CHECK(invariant(s, a3).value.v == invariant(catalog("T31"), a3).value.v);
    CHECK(invariant(s, g23).value.v == 4752);
    CHECK(invariant(catalog("T31"), g23).value.v == 4320);
}

TEST_CASE("arc closures keep the counting invariant of their closed forms") {
    GroupPtr s3 = make_symmetric_group(3);
    for (auto [arc, closed] : {std::pair{"T31arc", "T31"},
                               std::pair{"F41arc", "F41"},
                               std::pair{"K52arc", "K52"}}) {
        CAPTURE(arc);
        mpz_class c = counting_invariant(catalog(closed), s3);
        CHECK(counting_invariant(add_handle(catalog(arc)), s3) == c);
    }
}
