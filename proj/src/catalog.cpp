#include "weldinv/diagram.hpp"

#include <stdexcept>

namespace weldinv {

namespace {

BraidLetter pos(int i) { return {i, CrossSign::Positive}; }
BraidLetter neg(int i) { return {i, CrossSign::Negative}; }
BraidLetter vrt(int i) { return {i, CrossSign::Virtual}; }

std::vector<BraidLetter> torus_word(int n) {
    std::vector<BraidLetter> w;
    for (int i = 0; i < n; ++i) w.push_back(pos(1));
    return w;
}

void require_odd(const std::string& name, int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument(name + " requires a positive odd parameter");
}

// Two-component link with one classical and one virtual crossing:
// component born first passes classically over the other, then virtually.
MorseDiagram virtual_hopf() {
    MorseDiagram d;
    d.events = {MorseEvent::birth(0, BirthSide::LeftUp),
                MorseEvent::birth(1, BirthSide::LeftUp),
                MorseEvent::cross(0, CrossSign::Positive),
                MorseEvent::cross(1, CrossSign::Virtual),
                MorseEvent::death(0),
                MorseEvent::death(0)};
    return d;
}

// Arc passing classically over a circle, then virtually (open analogue of
// the virtual Hopf link, with the arc as the over strand).
MorseDiagram hopf_arc() {
    MorseDiagram d;
    d.events = {MorseEvent::endd(0),
                MorseEvent::birth(1, BirthSide::LeftUp),
                MorseEvent::cross(0, CrossSign::Positive),
                MorseEvent::cross(1, CrossSign::Virtual),
                MorseEvent::death(0),
                MorseEvent::endu(0)};
    return d;
}

}  // namespace

MorseDiagram catalog(const std::string& name, int n) {
    if (name == "O") return braid_closure(1, {});
    if (name == "O2") return braid_closure(2, {});
    if (name == "L") return virtual_hopf();
    if (name == "H") return braid_closure(2, torus_word(2));
    if (name == "HA") return hopf_arc();
    if (name == "T31") return braid_closure(2, torus_word(3));
    if (name == "T31arc") return braid_arc_closure(2, torus_word(3));
    if (name == "S") return add_handle(catalog("T31arc"));
    if (name == "F41") return braid_closure(3, {pos(1), neg(2), pos(1), neg(2)});
    if (name == "F41arc") return braid_arc_closure(3, {pos(1), neg(2), pos(1), neg(2)});
    if (name == "K51") return braid_closure(2, torus_word(5));
    if (name == "K51arc") return braid_arc_closure(2, torus_word(5));
    if (name == "K52") return braid_closure(3, {pos(1), pos(1), pos(1), pos(2), neg(1), pos(2)});
    if (name == "K52arc")
        return braid_arc_closure(3, {pos(1), pos(1), pos(1), pos(2), neg(1), pos(2)});
    if (name == "Kn") {
        require_odd("Kn", n);
        return braid_closure(2, torus_word(n));
    }
    if (name == "An") {
        require_odd("An", n);
        return braid_arc_closure(2, torus_word(n));
    }
    if (name == "Pn") {
        require_odd("Pn", n);
        return braid_closure(2, torus_word(2 * n));
    }
    if (name == "PnArc") {
        require_odd("PnArc", n);
        return braid_arc_closure(2, torus_word(2 * n));
    }
    if (name == "Q1") return braid_closure(3, {pos(1), pos(1), pos(2), pos(2)});
    if (name == "Q2") return braid_closure(3, {pos(1), pos(1), neg(2), vrt(2)});
    if (name == "Q3") return braid_closure(3, {neg(1), vrt(1), pos(2), vrt(2)});
    if (name == "VA") return braid_arc_closure(2, {pos(1), vrt(1), neg(1)});
    throw std::invalid_argument("unknown catalog name '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"O",   "O2",     "L",  "H",  "HA", "T31", "T31arc", "S",
            "F41", "F41arc", "K51", "K51arc", "K52", "K52arc",
            "Kn",  "An",     "Pn", "PnArc", "Q1", "Q2", "Q3", "VA"};
}

}  // namespace weldinv
