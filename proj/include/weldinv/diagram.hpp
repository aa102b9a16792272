#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace weldinv {

enum class EventKind { Birth, Death, Cross, Vertex, EndUp, EndDown };
enum class CrossSign { Positive, Negative, Virtual };
enum class BirthSide { LeftUp, RightUp };
enum class DiagramKind { Knot, Arc, Graph };

// One Morse event; pos is the 0-based leftmost strand index the event touches.
struct MorseEvent {
    EventKind kind = EventKind::Birth;
    int pos = 0;
    CrossSign sign = CrossSign::Positive;    // Cross only
    BirthSide side = BirthSide::LeftUp;      // Birth only
    int below = 0, above = 0;                // Vertex only

    static MorseEvent birth(int pos, BirthSide side = BirthSide::LeftUp) {
        return {EventKind::Birth, pos, CrossSign::Positive, side, 0, 0};
    }
    static MorseEvent death(int pos) { return {EventKind::Death, pos}; }
    static MorseEvent cross(int pos, CrossSign s) {
        return {EventKind::Cross, pos, s};
    }
    static MorseEvent vertex(int pos, int below, int above) {
        return {EventKind::Vertex, pos, CrossSign::Positive, BirthSide::LeftUp, below, above};
    }
    static MorseEvent endu(int pos) { return {EventKind::EndUp, pos}; }
    static MorseEvent endd(int pos) { return {EventKind::EndDown, pos}; }

    // Strand count below / above the event.
    int width_below() const;
    int width_above() const;

    bool operator==(const MorseEvent&) const = default;
};

// A welded virtual diagram as a bottom-to-top word of Morse events.
struct MorseDiagram {
    std::vector<MorseEvent> events;
    std::map<int, std::string> component_labels;  // ordinal (1-based) -> label

    bool operator==(const MorseDiagram&) const = default;
};

// Segment decomposition of a diagram: one segment per connected component of
// the diagram minus its events, with flows and component ordinals attached.
struct SweepInfo {
    int n_segments = 0;
    // Per event: segment ids entering from below / leaving above, left to right.
    std::vector<std::vector<int>> in_segs;
    std::vector<std::vector<int>> out_segs;
    std::vector<int> seg_component;   // 0-based component ordinal
    std::vector<bool> seg_up;         // solved flow orientation per segment
    int n_components = 0;
    std::vector<bool> comp_open;      // component has end events
};

// Structural pass; throws std::invalid_argument on under/overflow or a sweep
// that does not end with zero strands. Flow solving is strict when
// require_canonical is set (classical crossings must sit on upward strands).
SweepInfo sweep_segments(const MorseDiagram& d, bool require_canonical = true);

std::vector<std::string> validate(const MorseDiagram& d);
bool is_valid(const MorseDiagram& d);
DiagramKind kind_of(const MorseDiagram& d);
int component_count(const MorseDiagram& d);

// Text format, one event per line:
//   birth <pos> [lu|ru] / death <pos> / x+ <pos> / x- <pos> / xv <pos> /
//   vertex <pos> <below> <above> / endu <pos> / endd <pos> /
//   component <id> <label>; '#' starts a comment.
// Alternative header: braid <n>: <nonzero ints> (standard trace closure).
MorseDiagram parse_morse(const std::string& text);
std::string serialize(const MorseDiagram& d);

// Rotates classical crossings with downward strands by inserting birth/death
// pairs until every classical crossing sits on two upward strands.
MorseDiagram canonicalize(const MorseDiagram& d);

// Positive <-> Negative on every classical crossing.
MorseDiagram mirror(const MorseDiagram& d);

// One letter of a (virtual) braid word: strand index 1..n-1, crossing sign.
struct BraidLetter {
    int index = 1;
    CrossSign sign = CrossSign::Positive;
};

MorseDiagram braid_closure(int strands, const std::vector<BraidLetter>& word);
// Trace closure with strand 1 left open (a welded arc).
MorseDiagram braid_arc_closure(int strands, const std::vector<BraidLetter>& word);

// Built-in diagrams; parameterized names take n (odd where required).
MorseDiagram catalog(const std::string& name, int n = 0);
std::vector<std::string> catalog_names();

// Trivial 1-handle on the given component (1-based ordinal; 0 = default:
// the open component of an arc, else component 1). With simplify set, arc
// inputs are rewritten to an equivalent vertex-free closed diagram.
MorseDiagram add_handle(const MorseDiagram& d, int component = 0, bool simplify = true);

}  // namespace weldinv
