#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "weldinv/colouring.hpp"
#include "weldinv/moves.hpp"

using namespace weldinv;
using E = MorseEvent;

namespace {

constexpr auto P = CrossSign::Positive;
constexpr auto N = CrossSign::Negative;
constexpr auto V = CrossSign::Virtual;

MorseDiagram mk(std::vector<MorseEvent> evs) {
    MorseDiagram d;
    d.events = std::move(evs);
    return d;
}

// Catalog entries plus synthetic diagrams exercising vertex slides, end
// slides, and every sound crossing-triple pattern.
std::vector<std::pair<std::string, MorseDiagram>> move_cases() {
    std::vector<std::pair<std::string, MorseDiagram>> cases;
    for (const char* n : {"O", "O2", "T31", "F41", "K52", "L", "H", "S",
                          "T31arc", "HA", "VA", "Q1", "Q2", "Q3"})
        cases.emplace_back(n, catalog(n));
    cases.emplace_back("Pn1", catalog("Pn", 1));
    cases.emplace_back("An5", catalog("An", 5));
    cases.emplace_back("T31arc+h", add_handle(catalog("T31arc"), 0, false));
    cases.emplace_back("HA+h", add_handle(catalog("HA"), 0, false));

    // vertex with a strand moving right across its lower legs
    for (auto [nm, c1, c2] : {std::tuple{"slideR-neg", N, N},
                              std::tuple{"slideR-under", P, V},
                              std::tuple{"slideR-virt", V, V}})
        cases.emplace_back(nm, mk({E::endd(0), E::vertex(0, 1, 2), E::birth(2),
                                   E::cross(1, c1), E::cross(0, c2),
                                   E::vertex(1, 2, 1), E::death(1), E::endu(0)}));
    // vertex-first form with a strand moving left across its upper legs
    for (auto [nm, c1, c2] : {std::tuple{"slideL-pos", P, P},
                              std::tuple{"slideL-under", N, V},
                              std::tuple{"slideL-virt", V, V}})
        cases.emplace_back(nm, mk({E::birth(0, BirthSide::RightUp), E::endd(2),
                                   E::vertex(2, 1, 2), E::cross(1, c1), E::cross(2, c2),
                                   E::vertex(1, 2, 1), E::cross(1, V), E::death(0),
                                   E::endu(0)}));
    // free end next to a crossing
    cases.emplace_back("endplay", mk({E::endd(0), E::birth(1), E::cross(0, P),
                                      E::endu(0), E::death(0)}));

    // each sound triple as a 3-braid closure
    const char* sound[] = {"+++", "++-", "++v", "+--", "+vv", "-++", "--+", "---",
                           "-v+", "-vv", "v+v", "v--", "v-v", "vv+", "vv-", "vvv"};
    auto sig = [](char c) { return c == '+' ? P : c == '-' ? N : V; };
    for (const char* t : sound)
        cases.emplace_back(std::string("tri") + t,
                           braid_closure(3, {{1, sig(t[0])}, {2, sig(t[1])}, {1, sig(t[2])}}));
    return cases;
}

}  // namespace

TEST_CASE("every enumerated site applies soundly") {
    CrossedModule a3 = make_sign_module(3);
    CrossedModule g22 = make_gl_module(2, 2);
    std::map<std::string, long> coverage;
    for (auto& [name, d] : move_cases()) {
        CAPTURE(name);
        REQUIRE(is_valid(d));
        mpq_class h3 = invariant(d, a3).value.v;
        mpq_class hg = invariant(d, g22).value.v;
        int ncomp = component_count(d);
        for (MoveKind k : all_move_kinds()) {
            auto sites = enumerate_sites(d, k);
            coverage[move_name(k)] += (long)sites.size();
            int limit = 0;
            for (const Site& s : sites) {
                if (++limit > 25) break;
                CAPTURE(move_name(k));
                CAPTURE(s.index);
                CAPTURE(s.variant);
                CAPTURE(s.forward);
                MorseDiagram e = apply_move(d, k, s);
                CHECK(validate(e).empty());
                CHECK(component_count(e) == ncomp);
                CHECK(invariant(e, a3).value.v == h3);
                CHECK(invariant(e, g22).value.v == hg);
            }
        }
    }
    // the case list reaches every move family
    for (MoveKind k : all_move_kinds()) {
        CAPTURE(move_name(k));
        CHECK(coverage[move_name(k)] > 0);
    }
}

TEST_CASE("unsound crossing triples admit no triple slide") {
    auto sig = [](char c) { return c == '+' ? P : c == '-' ? N : V; };
    for (const char* t : {"+-+", "+-v", "+v+", "+v-", "-+-", "-+v", "--v",
                          "-v-", "v++", "v+-", "v-+"}) {
        MorseDiagram d =
            braid_closure(3, {{1, sig(t[0])}, {2, sig(t[1])}, {1, sig(t[2])}});
        CAPTURE(t);
        for (MoveKind k : {MoveKind::R3, MoveKind::VR3, MoveKind::Mixed, MoveKind::F1})
            CHECK(enumerate_sites(d, k).empty());
    }
}

TEST_CASE("apply_move rejects bogus sites") {
    MorseDiagram d = catalog("T31");
    Site s;
    s.index = 100;
    CHECK_THROWS_AS(apply_move(d, MoveKind::R2, s), std::invalid_argument);
    Site first;
    CHECK_THROWS_AS(apply_move(d, MoveKind::VR3, first), std::invalid_argument);
}

TEST_CASE("enumerate_sites is deterministic and matches apply") {
    for (const char* n : {"T31", "Q2", "HA"}) {
        CAPTURE(n);
        MorseDiagram d = catalog(n);
        for (MoveKind k : all_move_kinds()) {
            auto a = enumerate_sites(d, k);
            auto b = enumerate_sites(d, k);
            CHECK(a == b);
            for (const Site& s : a) CHECK_NOTHROW(apply_move(d, k, s));
        }
    }
}

TEST_CASE("random walks preserve the invariant") {
    CrossedModule a3 = make_sign_module(3);
    for (auto& [name, d] : move_cases()) {
        CAPTURE(name);
        mpq_class h3 = invariant(d, a3).value.v;
        int ncomp = component_count(d);
        for (unsigned seed = 1; seed <= 2; ++seed) {
            MorseDiagram e = random_equivalent(d, 120, seed);
            CHECK(validate(e).empty());
            CHECK(component_count(e) == ncomp);
            CHECK(invariant(e, a3).value.v == h3);
        }
    }
}

TEST_CASE("move names are unique") {
    std::map<std::string, int> seen;
    for (MoveKind k : all_move_kinds()) ++seen[move_name(k)];
    CHECK(seen.size() == all_move_kinds().size());
    CHECK(all_move_kinds().size() == 19);
}
