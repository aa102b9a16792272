#include <stdexcept>

#include "doctest.h"
#include "weldinv/diagram.hpp"
#include "weldinv/moves.hpp"

using namespace weldinv;
using E = MorseEvent;

namespace {

MorseDiagram mk(std::vector<MorseEvent> evs) {
    MorseDiagram d;
    d.events = std::move(evs);
    return d;
}

const std::vector<std::string>& all_instances() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const std::string& n : catalog_names())
            if (n == "Kn" || n == "An" || n == "Pn" || n == "PnArc")
                v.push_back(n + "(3)");
            else
                v.push_back(n);
        return v;
    }();
    return names;
}

MorseDiagram instance(const std::string& spec) {
    auto open = spec.find('(');
    if (open == std::string::npos) return catalog(spec);
    return catalog(spec.substr(0, open), std::stoi(spec.substr(open + 1)));
}

}  // namespace

TEST_CASE("catalog diagrams validate") {
    for (const auto& n : all_instances()) {
        CAPTURE(n);
        MorseDiagram d = instance(n);
        CHECK(validate(d).empty());
        CHECK(is_valid(d));
    }
}

TEST_CASE("serialize / parse round trip") {
    for (const auto& n : all_instances()) {
        CAPTURE(n);
        MorseDiagram d = instance(n);
        CHECK(parse_morse(serialize(d)) == d);
    }
    // graph events survive too
    MorseDiagram g = mk({E::endd(0), E::vertex(0, 1, 2), E::birth(2), E::cross(1, CrossSign::Negative),
                         E::cross(0, CrossSign::Negative), E::vertex(1, 2, 1), E::death(1), E::endu(0)});
    REQUIRE(is_valid(g));
    CHECK(parse_morse(serialize(g)) == g);
    // component labels round-trip
    MorseDiagram l = catalog("L");
    l.component_labels[1] = "first";
    CHECK(parse_morse(serialize(l)) == l);
}

TEST_CASE("morse text parser") {
    MorseDiagram d = parse_morse("# trefoil as a braid\nbraid 2: 1 1 1\n");
    CHECK(d == catalog("T31"));
    MorseDiagram h = parse_morse(
        "birth 0 lu\n"
        "birth 1 lu\n"
        "x+ 0\n"
        "xv 1\n"
        "death 0\n"
        "death 0\n");
    CHECK(h == catalog("L"));
    CHECK_THROWS_AS(parse_morse("jump 3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_morse("birth\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_morse("braid 2: 0\n"), std::invalid_argument);
}

TEST_CASE("validate rejects malformed diagrams") {
    CHECK_FALSE(is_valid(mk({E::birth(0)})));                     // open strands at the top
    CHECK_FALSE(is_valid(mk({E::death(0)})));                     // underflow
    CHECK_FALSE(is_valid(mk({E::birth(0), E::cross(1, CrossSign::Virtual), E::death(0)})));
    // classical crossing with a downward strand is not canonical
    MorseDiagram bad = mk({E::birth(0), E::birth(1), E::cross(1, CrossSign::Positive),
                           E::death(1), E::death(0)});
    CHECK_FALSE(is_valid(bad));
    CHECK_FALSE(validate(bad).empty());
    // the virtual counterpart is fine
    MorseDiagram ok = mk({E::birth(0), E::birth(1), E::cross(1, CrossSign::Virtual),
                          E::death(1), E::death(0)});
    CHECK(is_valid(ok));
}

TEST_CASE("canonicalize rotates non-canonical crossings") {
    MorseDiagram bad = mk({E::birth(0), E::birth(1), E::cross(1, CrossSign::Positive),
                           E::death(1), E::death(0)});
    MorseDiagram c = canonicalize(bad);
    CHECK(is_valid(c));
    CHECK(component_count(c) == 2);
    CHECK(canonicalize(c) == c);  // idempotent
    for (const auto& n : all_instances()) {
        CAPTURE(n);
        MorseDiagram d = instance(n);
        CHECK(canonicalize(d) == d);  // catalog is already canonical
    }
}

TEST_CASE("mirror is an involution that flips signs") {
    for (const auto& n : all_instances()) {
        CAPTURE(n);
        MorseDiagram d = instance(n);
        MorseDiagram m = mirror(d);
        CHECK(is_valid(m));
        CHECK(mirror(m) == d);
    }
    MorseDiagram t = mirror(catalog("T31"));
    for (const auto& e : t.events)
        if (e.kind == EventKind::Cross) CHECK(e.sign == CrossSign::Negative);
    CHECK(mirror(catalog("Q2")) != catalog("Q2"));  // virtual crossings stay put
}

TEST_CASE("kinds and component counts") {
    CHECK(kind_of(catalog("T31")) == DiagramKind::Knot);
    CHECK(kind_of(catalog("T31arc")) == DiagramKind::Arc);
    CHECK(kind_of(add_handle(catalog("T31arc"), 0, false)) == DiagramKind::Graph);
    CHECK(component_count(catalog("O")) == 1);
    CHECK(component_count(catalog("O2")) == 2);
    CHECK(component_count(catalog("L")) == 2);
    CHECK(component_count(catalog("HA")) == 2);
    CHECK(component_count(catalog("Q1")) == 3);
    CHECK(component_count(catalog("Pn", 3)) == 2);
    CHECK(component_count(catalog("PnArc", 3)) == 2);
    CHECK(component_count(catalog("VA")) == 1);
}

TEST_CASE("sweep info") {
    SweepInfo s = sweep_segments(catalog("O"));
    CHECK(s.n_segments == 2);
    CHECK(s.n_components == 1);
    CHECK_FALSE(s.comp_open[0]);
    // one side of the unknot flows up, the other down
    CHECK(s.seg_up[0] != s.seg_up[1]);

    SweepInfo ha = sweep_segments(catalog("HA"));
    CHECK(ha.n_components == 2);
    CHECK((ha.comp_open[0] || ha.comp_open[1]));
    CHECK_FALSE((ha.comp_open[0] && ha.comp_open[1]));

    SweepInfo t = sweep_segments(catalog("T31"));
    CHECK(t.n_components == 1);
    // braid closure of sigma_1^3 on 2 strands: 3 crossings, 2 extrema pairs
    CHECK(t.n_segments == 10);
}

TEST_CASE("braid builders") {
    // empty word on n strands is the n-component unlink
    CHECK(component_count(braid_closure(3, {})) == 3);
    // closing the arc first gives back the trace closure
    MorseDiagram arc = braid_arc_closure(2, {{1, CrossSign::Positive}});
    CHECK(kind_of(arc) == DiagramKind::Arc);
    CHECK(component_count(arc) == 1);
    CHECK_THROWS_AS((braid_closure(2, {{2, CrossSign::Positive}})), std::invalid_argument);
    CHECK_THROWS_AS((braid_closure(2, {{0, CrossSign::Positive}})), std::invalid_argument);
}

TEST_CASE("add_handle structure") {
    MorseDiagram arc = catalog("T31arc");
    MorseDiagram raw = add_handle(arc, 0, false);
    int vertices = 0;
    for (const auto& e : raw.events) vertices += e.kind == EventKind::Vertex;
    CHECK(vertices == 2);
    CHECK(is_valid(raw));
    CHECK(component_count(raw) == 1);

    MorseDiagram slim = add_handle(arc, 0, true);
    CHECK(kind_of(slim) == DiagramKind::Knot);
    int slim_vertices = 0;
    for (const auto& e : slim.events) slim_vertices += e.kind == EventKind::Vertex;
    CHECK(slim_vertices == 0);
    CHECK(component_count(slim) == 1);

    // closed inputs keep their vertex pair
    MorseDiagram closed = add_handle(catalog("T31"), 1, true);
    CHECK(is_valid(closed));
    CHECK(kind_of(closed) == DiagramKind::Graph);
}

TEST_CASE("random walks stay valid") {
    for (std::string n : {"T31", "L", "HA", "Q2"}) {
        CAPTURE(n);
        MorseDiagram d = catalog(n);
        MorseDiagram e = random_equivalent(d, 200, 42);
        CHECK(is_valid(e));
        // vertices and capped ends may come and go, components never do
        CHECK(component_count(e) == component_count(d));
        // deterministic in the seed
        CHECK(random_equivalent(d, 200, 42) == e);
        CHECK(random_equivalent(d, 200, 43) != e);
    }
}
