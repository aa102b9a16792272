#include "weldinv/diagram.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace weldinv {

int MorseEvent::width_below() const {
    switch (kind) {
        case EventKind::Birth: return 0;
        case EventKind::Death: return 2;
        case EventKind::Cross: return 2;
        case EventKind::Vertex: return below;
        case EventKind::EndUp: return 1;
        case EventKind::EndDown: return 0;
    }
    return 0;
}

int MorseEvent::width_above() const {
    switch (kind) {
        case EventKind::Birth: return 2;
        case EventKind::Death: return 0;
        case EventKind::Cross: return 2;
        case EventKind::Vertex: return above;
        case EventKind::EndUp: return 0;
        case EventKind::EndDown: return 1;
    }
    return 0;
}

namespace {

// Union-find over segments tracking flow parity (same/opposite) and an
// optional fixed orientation per class.
struct FlowSolver {
    std::vector<int> parent;
    std::vector<uint8_t> rel;   // parity of node vs its parent
    std::vector<int8_t> fixed;  // per root: -1 free, 0 down, 1 up
    std::vector<std::string>* viol;

    explicit FlowSolver(std::vector<std::string>* v) : viol(v) {}

    int add() {
        parent.push_back((int)parent.size());
        rel.push_back(0);
        fixed.push_back(-1);
        return (int)parent.size() - 1;
    }
    int find(int x, uint8_t& par) {
        par = 0;
        while (parent[x] != x) {
            par ^= rel[x];
            x = parent[x];
        }
        return x;
    }
    void complain(const std::string& msg) {
        if (viol) viol->push_back(msg);
    }
    void relate(int a, int b, bool opposite, const std::string& what) {
        uint8_t pa, pb;
        int ra = find(a, pa), rb = find(b, pb);
        uint8_t want = uint8_t(pa ^ pb ^ (opposite ? 1 : 0));
        if (ra == rb) {
            if (want) complain("orientation violation: " + what);
            return;
        }
        int8_t fa = fixed[ra], fb = fixed[rb];
        parent[rb] = ra;
        rel[rb] = want;
        if (fb >= 0) {
            int8_t fb_as_a = want ? int8_t(1 - fb) : fb;
            if (fa >= 0 && fa != fb_as_a) complain("orientation violation: " + what);
            if (fa < 0) fixed[ra] = fb_as_a;
        }
    }
    void fix(int a, bool up, const std::string& what) {
        uint8_t pa;
        int ra = find(a, pa);
        int8_t v = int8_t((up ? 1 : 0) ^ pa);
        if (fixed[ra] >= 0 && fixed[ra] != v) complain("orientation violation: " + what);
        if (fixed[ra] < 0) fixed[ra] = v;
    }
    bool value(int a) {  // free classes default to upward
        uint8_t pa;
        int ra = find(a, pa);
        int8_t f = fixed[ra] < 0 ? 1 : fixed[ra];
        return (f ^ pa) != 0;
    }
};

struct ComponentUf {
    std::vector<int> parent;
    int add() {
        parent.push_back((int)parent.size());
        return (int)parent.size() - 1;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

struct SweepAbort {};

SweepInfo sweep_impl(const MorseDiagram& d, bool require_canonical,
                     std::vector<std::string>* viol) {
    SweepInfo info;
    FlowSolver flow(viol);
    ComponentUf comp;
    std::vector<int> cur;  // segment id per strand position
    std::vector<bool> open_seg;

    auto fail = [&](size_t at, const std::string& msg) {
        if (viol) {
            viol->push_back("event " + std::to_string(at + 1) + ": " + msg);
            throw SweepAbort{};
        }
        throw std::invalid_argument("event " + std::to_string(at + 1) + ": " + msg);
    };
    auto new_seg = [&]() {
        flow.add();
        comp.add();
        open_seg.push_back(false);
        return info.n_segments++;
    };

    info.in_segs.resize(d.events.size());
    info.out_segs.resize(d.events.size());
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        int wb = e.width_below();
        if (e.kind == EventKind::Vertex && e.below + e.above <= 1)
            fail(i, "vertex of total valence <= 1");
        if (e.pos < 0 || e.pos + wb > (int)cur.size())
            fail(i, "position out of range (strand count " + std::to_string(cur.size()) + ")");
        auto& ins = info.in_segs[i];
        auto& outs = info.out_segs[i];
        for (int t = 0; t < wb; ++t) ins.push_back(cur[e.pos + t]);
        switch (e.kind) {
            case EventKind::Birth: {
                int l = new_seg(), r = new_seg();
                outs = {l, r};
                cur.insert(cur.begin() + e.pos, {l, r});
                comp.join(l, r);
                bool left_up = e.side == BirthSide::LeftUp;
                flow.fix(l, left_up, "birth strands");
                flow.fix(r, !left_up, "birth strands");
                break;
            }
            case EventKind::Death: {
                cur.erase(cur.begin() + e.pos, cur.begin() + e.pos + 2);
                comp.join(ins[0], ins[1]);
                flow.relate(ins[0], ins[1], true,
                            "death must join one upward and one downward strand");
                break;
            }
            case EventKind::Cross: {
                int nl = new_seg(), nr = new_seg();
                outs = {nl, nr};
                cur[e.pos] = nl;
                cur[e.pos + 1] = nr;
                comp.join(ins[0], nr);
                comp.join(ins[1], nl);
                flow.relate(ins[0], nr, false, "crossing continuity");
                flow.relate(ins[1], nl, false, "crossing continuity");
                if (require_canonical && e.sign != CrossSign::Virtual) {
                    flow.fix(ins[0], true, "classical crossing on a downward strand");
                    flow.fix(ins[1], true, "classical crossing on a downward strand");
                }
                break;
            }
            case EventKind::Vertex: {
                cur.erase(cur.begin() + e.pos, cur.begin() + e.pos + e.below);
                std::vector<int> fresh;
                for (int t = 0; t < e.above; ++t) fresh.push_back(new_seg());
                outs = fresh;
                cur.insert(cur.begin() + e.pos, fresh.begin(), fresh.end());
                int rep = ins.empty() ? outs[0] : ins[0];
                for (int s : ins) comp.join(rep, s);
                for (int s : outs) comp.join(rep, s);
                break;
            }
            case EventKind::EndUp: {
                cur.erase(cur.begin() + e.pos);
                open_seg[ins[0]] = true;
                break;
            }
            case EventKind::EndDown: {
                int s = new_seg();
                outs = {s};
                cur.insert(cur.begin() + e.pos, s);
                open_seg[s] = true;
                break;
            }
        }
    }
    if (!cur.empty())
        fail(d.events.size() - 1,
             "sweep ends with " + std::to_string(cur.size()) + " strands");

    // Component ordinals by first-seen segment.
    std::vector<int> ord(info.n_segments, -1);
    for (int s = 0; s < info.n_segments; ++s) {
        int r = comp.find(s);
        if (ord[r] < 0) ord[r] = info.n_components++;
    }
    info.seg_component.resize(info.n_segments);
    info.comp_open.assign(info.n_components, false);
    info.seg_up.resize(info.n_segments);
    for (int s = 0; s < info.n_segments; ++s) {
        info.seg_component[s] = ord[comp.find(s)];
        if (open_seg[s]) info.comp_open[info.seg_component[s]] = true;
        info.seg_up[s] = flow.value(s);
    }
    return info;
}

}  // namespace

SweepInfo sweep_segments(const MorseDiagram& d, bool require_canonical) {
    return sweep_impl(d, require_canonical, nullptr);
}

std::vector<std::string> validate(const MorseDiagram& d) {
    std::vector<std::string> viol;
    SweepInfo info;
    try {
        info = sweep_impl(d, true, &viol);
    } catch (const SweepAbort&) {
        return viol;
    }
    for (auto& [ordinal, label] : d.component_labels) {
        if (ordinal < 1 || ordinal > info.n_components)
            viol.push_back("component label " + std::to_string(ordinal) +
                           " out of range (diagram has " +
                           std::to_string(info.n_components) + " components)");
    }
    return viol;
}

bool is_valid(const MorseDiagram& d) { return validate(d).empty(); }

DiagramKind kind_of(const MorseDiagram& d) {
    bool has_end = false;
    for (const auto& e : d.events) {
        if (e.kind == EventKind::Vertex) return DiagramKind::Graph;
        if (e.kind == EventKind::EndUp || e.kind == EventKind::EndDown) has_end = true;
    }
    return has_end ? DiagramKind::Arc : DiagramKind::Knot;
}

int component_count(const MorseDiagram& d) {
    return sweep_segments(d, false).n_components;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (isspace((unsigned char)c)) {
            if (!cur.empty()) { out.push_back(cur); cur.clear(); }
        } else cur += c;
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, int lineno) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": bad integer '" + s + "'");
    }
}

}  // namespace

MorseDiagram parse_morse(const std::string& text) {
    MorseDiagram d;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_braid = false, saw_event = false;
    int braid_n = 0;
    std::vector<BraidLetter> braid_word;

    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokens_of(line);
        if (tok.empty()) continue;
        auto err = [&](const std::string& msg) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
        };
        auto need = [&](size_t n) {
            if (tok.size() != n) err("wrong number of arguments for '" + tok[0] + "'");
        };
        const std::string& op = tok[0];
        if (op == "component") {
            need(3);
            d.component_labels[parse_int(tok[1], lineno)] = tok[2];
            continue;
        }
        if (op == "braid") {
            if (saw_event || saw_braid) err("braid header must be the only event source");
            saw_braid = true;
            // accept "braid 2: ..." and "braid 2 : ..."
            size_t t = 1;
            if (t >= tok.size()) err("braid header needs a strand count");
            std::string ns = tok[t];
            bool colon = false;
            if (!ns.empty() && ns.back() == ':') { ns.pop_back(); colon = true; }
            braid_n = parse_int(ns, lineno);
            ++t;
            if (!colon) {
                if (t >= tok.size() || tok[t] != ":") err("expected ':' after strand count");
                ++t;
            }
            for (; t < tok.size(); ++t) {
                int w = parse_int(tok[t], lineno);
                if (w == 0) err("braid letters are nonzero integers");
                braid_word.push_back({std::abs(w),
                                      w > 0 ? CrossSign::Positive : CrossSign::Negative});
                if (std::abs(w) >= braid_n) err("braid letter out of range");
            }
            if (braid_n < 1) err("braid needs at least one strand");
            continue;
        }
        if (saw_braid) err("events cannot follow a braid header");
        saw_event = true;
        MorseEvent e;
        if (op == "birth") {
            if (tok.size() != 2 && tok.size() != 3) err("birth takes <pos> [lu|ru]");
            BirthSide side = BirthSide::LeftUp;
            if (tok.size() == 3) {
                if (tok[2] == "lu") side = BirthSide::LeftUp;
                else if (tok[2] == "ru") side = BirthSide::RightUp;
                else err("birth orientation must be lu or ru");
            }
            e = MorseEvent::birth(parse_int(tok[1], lineno), side);
        } else if (op == "death") {
            need(2);
            e = MorseEvent::death(parse_int(tok[1], lineno));
        } else if (op == "x+") {
            need(2);
            e = MorseEvent::cross(parse_int(tok[1], lineno), CrossSign::Positive);
        } else if (op == "x-") {
            need(2);
            e = MorseEvent::cross(parse_int(tok[1], lineno), CrossSign::Negative);
        } else if (op == "xv") {
            need(2);
            e = MorseEvent::cross(parse_int(tok[1], lineno), CrossSign::Virtual);
        } else if (op == "vertex") {
            need(4);
            e = MorseEvent::vertex(parse_int(tok[1], lineno), parse_int(tok[2], lineno),
                                   parse_int(tok[3], lineno));
        } else if (op == "endu") {
            need(2);
            e = MorseEvent::endu(parse_int(tok[1], lineno));
        } else if (op == "endd") {
            need(2);
            e = MorseEvent::endd(parse_int(tok[1], lineno));
        } else {
            err("unknown event '" + op + "'");
        }
        d.events.push_back(e);
    }

    if (saw_braid) {
        auto labels = std::move(d.component_labels);
        d = canonicalize(braid_closure(braid_n, braid_word));
        d.component_labels = std::move(labels);
    }
    auto viol = validate(d);
    if (!viol.empty()) {
        std::string msg = "invalid diagram:";
        for (auto& v : viol) msg += "\n  " + v;
        throw std::invalid_argument(msg);
    }
    return d;
}

std::string serialize(const MorseDiagram& d) {
    std::ostringstream out;
    for (auto& [ordinal, label] : d.component_labels)
        out << "component " << ordinal << " " << label << "\n";
    for (const auto& e : d.events) {
        switch (e.kind) {
            case EventKind::Birth:
                out << "birth " << e.pos << " "
                    << (e.side == BirthSide::LeftUp ? "lu" : "ru") << "\n";
                break;
            case EventKind::Death: out << "death " << e.pos << "\n"; break;
            case EventKind::Cross:
                out << (e.sign == CrossSign::Positive ? "x+"
                        : e.sign == CrossSign::Negative ? "x-" : "xv")
                    << " " << e.pos << "\n";
                break;
            case EventKind::Vertex:
                out << "vertex " << e.pos << " " << e.below << " " << e.above << "\n";
                break;
            case EventKind::EndUp: out << "endu " << e.pos << "\n"; break;
            case EventKind::EndDown: out << "endd " << e.pos << "\n"; break;
        }
    }
    return out.str();
}

MorseDiagram canonicalize(const MorseDiagram& d) {
    MorseDiagram cur = d;
    size_t guard = 4 * d.events.size() + 16;
    for (size_t iter = 0; iter < guard; ++iter) {
        SweepInfo info = sweep_segments(cur, false);
        size_t at = cur.events.size();
        bool right_down = false;
        for (size_t i = 0; i < cur.events.size(); ++i) {
            const MorseEvent& e = cur.events[i];
            if (e.kind != EventKind::Cross || e.sign == CrossSign::Virtual) continue;
            bool lu = info.seg_up[info.in_segs[i][0]];
            bool ru = info.seg_up[info.in_segs[i][1]];
            if (lu && ru) continue;
            at = i;
            right_down = !ru;
            break;
        }
        if (at == cur.events.size()) return cur;
        MorseEvent e = cur.events[at];
        CrossSign flipped = e.sign == CrossSign::Positive ? CrossSign::Negative
                                                          : CrossSign::Positive;
        std::vector<MorseEvent> repl;
        if (right_down) {
            // Rotate the right-hand (downward) strand around an inserted cup/cap.
            repl = {MorseEvent::birth(e.pos, BirthSide::RightUp),
                    MorseEvent::cross(e.pos + 1, flipped), MorseEvent::death(e.pos + 2)};
        } else {
            // Left strand downward, right upward.
            repl = {MorseEvent::birth(e.pos + 2, BirthSide::LeftUp),
                    MorseEvent::cross(e.pos + 1, flipped), MorseEvent::death(e.pos)};
        }
        cur.events.erase(cur.events.begin() + at);
        cur.events.insert(cur.events.begin() + at, repl.begin(), repl.end());
    }
    throw std::logic_error("canonicalize did not terminate");
}

MorseDiagram mirror(const MorseDiagram& d) {
    MorseDiagram m = d;
    for (auto& e : m.events) {
        if (e.kind != EventKind::Cross) continue;
        if (e.sign == CrossSign::Positive) e.sign = CrossSign::Negative;
        else if (e.sign == CrossSign::Negative) e.sign = CrossSign::Positive;
    }
    return m;
}

MorseDiagram braid_closure(int strands, const std::vector<BraidLetter>& word) {
    if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
    MorseDiagram d;
    for (int i = 0; i < strands; ++i)
        d.events.push_back(MorseEvent::birth(i, BirthSide::LeftUp));
    for (const auto& l : word) {
        if (l.index < 1 || l.index >= strands)
            throw std::invalid_argument("braid letter out of range");
        d.events.push_back(MorseEvent::cross(l.index - 1, l.sign));
    }
    for (int i = strands - 1; i >= 0; --i) d.events.push_back(MorseEvent::death(i));
    return d;
}

MorseDiagram braid_arc_closure(int strands, const std::vector<BraidLetter>& word) {
    if (strands < 1) throw std::invalid_argument("braid needs at least one strand");
    MorseDiagram d;
    d.events.push_back(MorseEvent::endd(0));
    for (int i = 1; i < strands; ++i)
        d.events.push_back(MorseEvent::birth(i, BirthSide::LeftUp));
    for (const auto& l : word) {
        if (l.index < 1 || l.index >= strands)
            throw std::invalid_argument("braid letter out of range");
        d.events.push_back(MorseEvent::cross(l.index - 1, l.sign));
    }
    for (int i = strands - 1; i >= 1; --i) d.events.push_back(MorseEvent::death(i));
    d.events.push_back(MorseEvent::endu(0));
    return d;
}

}  // namespace weldinv
