#include <cstdlib>

#include "doctest.h"
#include "weldinv/colouring.hpp"
#include "weldinv/presentation.hpp"

using namespace weldinv;
using E = MorseEvent;

namespace {

mpq_class val(const MorseDiagram& d, const CrossedModule& cm, CountOptions opts = {}) {
    return invariant(d, cm, opts).value.v;
}

}  // namespace

TEST_CASE("base values under the order-3 sign module") {
    CrossedModule a3 = make_sign_module(3);
    CHECK(val(catalog("O"), a3) == 6);
    CHECK(val(catalog("O2"), a3) == 36);
    CHECK(val(catalog("L"), a3) == 24);
    CHECK(val(catalog("H"), a3) == 18);
    CHECK(val(catalog("T31"), a3) == 12);
    CHECK(val(catalog("HA"), a3) == 24);
    CHECK(val(catalog("Pn", 3), a3) == 24);
    CHECK(val(catalog("PnArc", 3), a3) == 30);
}

TEST_CASE("normalisation bookkeeping") {
    CrossedModule a3 = make_sign_module(3);
    CountReport r = invariant(catalog("HA"), a3);
    CHECK(r.raw_count == 8);
    CHECK(r.caps == 1);
    CHECK(r.cups == 1);
    CHECK(r.up_ends == 1);
    CHECK(r.down_ends == 1);
    CHECK(r.exponent == 1);
    CHECK(r.value.is_integer());
    CHECK(r.value.as_integer() == 24);
    CHECK(r.value.str() == "24");

    // closed braid closures carry no net normalisation
    CountReport t = invariant(catalog("T31"), a3);
    CHECK(t.exponent == 0);
    CHECK(t.raw_count == 12);
}

TEST_CASE("naive and fast backends agree") {
    CrossedModule a3 = make_sign_module(3);
    CrossedModule g22 = make_gl_module(2, 2);
    CountOptions naive;
    naive.naive = true;
    for (const char* n : {"O", "L", "H", "T31", "HA", "VA", "Q2", "K52"}) {
        CAPTURE(n);
        MorseDiagram d = catalog(n);
        CHECK(val(d, a3, naive) == val(d, a3));
        CHECK(val(d, g22, naive) == val(d, g22));
    }
}

TEST_CASE("fast count independent of workers and conjugacy reduction") {
    CrossedModule g23 = make_gl_module(2, 3);
    for (const char* n : {"T31", "Q2", "F41"}) {
        CAPTURE(n);
        MorseDiagram d = catalog(n);
        mpq_class base = val(d, g23);
        for (int workers : {2, 4}) {
            CountOptions o;
            o.workers = workers;
            CHECK(val(d, g23, o) == base);
        }
        CountOptions nc;
        nc.conjugacy_reduction = false;
        CHECK(val(d, g23, nc) == base);
    }
}

TEST_CASE("trivial coefficients reduce to homomorphism counting") {
    GroupPtr s3 = make_symmetric_group(3);
    GroupPtr s4 = make_symmetric_group(4);
    for (const char* n : {"O", "L", "T31", "F41", "K52", "Q1", "Q3", "S", "VA"}) {
        CAPTURE(n);
        MorseDiagram d = catalog(n);
        for (GroupPtr g : {s3, s4}) {
            CrossedModule triv = make_trivial_E(g);
            CHECK(val(d, triv) == counting_invariant(d, g));
        }
    }
    // the unknot admits exactly |G| homomorphisms
    CHECK(counting_invariant(catalog("O"), s4) == 24);
}

TEST_CASE("handle diagrams count the same raw or simplified") {
    CrossedModule a3 = make_sign_module(3);
    CrossedModule g22 = make_gl_module(2, 2);
    for (const char* n : {"T31arc", "F41arc", "HA"}) {
        CAPTURE(n);
        MorseDiagram arc = catalog(n);
        MorseDiagram raw = add_handle(arc, 0, false);
        MorseDiagram slim = add_handle(arc, 0, true);
        CHECK(val(raw, a3) == val(slim, a3));
        CHECK(val(raw, g22) == val(slim, g22));
    }
}

TEST_CASE("graph diagrams normalise by vertex departure counts") {
    // two trivalent vertices, one open end pair
    MorseDiagram g;
    g.events = {E::endd(0), E::vertex(0, 1, 2), E::birth(2), E::cross(1, CrossSign::Negative),
                E::cross(0, CrossSign::Negative), E::vertex(1, 2, 1), E::death(1), E::endu(0)};
    REQUIRE(is_valid(g));
    CrossedModule a3 = make_sign_module(3);
    CountOptions naive;
    naive.naive = true;
    CHECK(val(g, a3, naive) == val(g, a3));
    CountReport r = invariant(g, a3);
    REQUIRE(r.vertex_above.size() == 2);
    CHECK(r.vertex_above[0] + r.vertex_above[1] == 3);
}

TEST_CASE("oracle cap rejects oversized naive runs") {
    setenv("WELDINV_ORACLE_CAP", "10", 1);
    ColouringProblem p = build_problem(catalog("T31"), make_sign_module(3));
    CHECK_THROWS_AS(count_naive(p), OracleCapExceeded);
    unsetenv("WELDINV_ORACLE_CAP");
    CHECK(count_naive(p) == 12);
    // the fast backend ignores the cap
    setenv("WELDINV_ORACLE_CAP", "10", 1);
    CHECK(count_fast(p) == 12);
    unsetenv("WELDINV_ORACLE_CAP");
}

TEST_CASE("exercise arc and its closure") {
    CrossedModule a3 = make_sign_module(3);
    CHECK(val(catalog("VA"), a3) == 12);
    MorseDiagram closed = braid_closure(2, {{1, CrossSign::Positive},
                                            {1, CrossSign::Virtual},
                                            {1, CrossSign::Negative}});
    CHECK(val(closed, a3) == 6);
}
