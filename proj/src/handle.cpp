#include "weldinv/diagram.hpp"

#include <stdexcept>

namespace weldinv {

namespace {

// Insert the two handle vertices on the first strand of the target component,
// keeping the diagram in graph form.
MorseDiagram raw_handle(const MorseDiagram& d, int target) {
    SweepInfo sw = sweep_segments(d, false);
    std::vector<int> cur;
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        cur.erase(cur.begin() + e.pos, cur.begin() + e.pos + e.width_below());
        cur.insert(cur.begin() + e.pos, sw.out_segs[i].begin(), sw.out_segs[i].end());
        for (int s = 0; s < (int)cur.size(); ++s) {
            if (sw.seg_component[cur[s]] != target) continue;
            MorseDiagram out = d;
            out.events.insert(out.events.begin() + i + 1,
                              {MorseEvent::vertex(s, 1, 2), MorseEvent::vertex(s, 2, 1)});
            return out;
        }
    }
    throw std::invalid_argument("component has no strands");
}

// Replace the open component by its boundary: the strand plus an anti-parallel
// companion, closing the two ends into a cup and a cap.  The companion runs on
// the left of upward strands (equivalently the right of downward ones); it
// passes virtually wherever the original strand crossed over, and classically
// under wherever the original strand crossed under.  Expects canonical input.
MorseDiagram doubled_handle(const MorseDiagram& d, int target) {
    SweepInfo sw = sweep_segments(d, false);
    std::vector<int> cur;  // original sweep slots (segment ids)
    MorseDiagram out;
    out.component_labels = d.component_labels;

    auto on_target = [&](int seg) { return sw.seg_component[seg] == target; };
    auto new_pos = [&](int p) {
        int q = 0;
        for (int s = 0; s < p; ++s) q += on_target(cur[s]) ? 2 : 1;
        return q;
    };
    auto emit = [&](MorseEvent e) { out.events.push_back(e); };

    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        int q = new_pos(e.pos);
        const auto& ins = sw.in_segs[i];
        bool arc0 = !ins.empty() && on_target(ins[0]);
        bool arc1 = ins.size() > 1 && on_target(ins[1]);
        switch (e.kind) {
            case EventKind::Birth:
                if (on_target(sw.out_segs[i][0])) {
                    emit(MorseEvent::birth(q, BirthSide::RightUp));
                    emit(MorseEvent::birth(q + 1, BirthSide::LeftUp));
                } else {
                    emit(MorseEvent::birth(q, e.side));
                }
                break;
            case EventKind::Death:
                if (arc0) emit(MorseEvent::death(q + 1));
                emit(MorseEvent::death(q));
                break;
            case EventKind::EndDown:
                emit(MorseEvent::birth(q, BirthSide::RightUp));
                break;
            case EventKind::EndUp:
                emit(MorseEvent::death(q));
                break;
            case EventKind::Vertex:
                if (arc0 || (e.below == 0 && on_target(sw.out_segs[i][0])))
                    throw std::invalid_argument("cannot double through a vertex");
                emit(MorseEvent::vertex(q, e.below, e.above));
                break;
            case EventKind::Cross: {
                if (e.sign == CrossSign::Virtual) {
                    if (arc0 && arc1) {
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                        emit(MorseEvent::cross(q + 2, CrossSign::Virtual));
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                    } else if (arc0) {
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                    } else if (arc1) {
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                    } else {
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                    }
                    break;
                }
                bool left_over = e.sign == CrossSign::Positive;
                if (arc0 && arc1) {
                    if (left_over) {
                        emit(MorseEvent::cross(q + 1, CrossSign::Positive));
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                        emit(MorseEvent::cross(q + 2, CrossSign::Positive));
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                    } else {
                        emit(MorseEvent::cross(q + 1, CrossSign::Virtual));
                        emit(MorseEvent::cross(q, CrossSign::Virtual));
                        emit(MorseEvent::cross(q + 2, CrossSign::Negative));
                        emit(MorseEvent::cross(q + 1, CrossSign::Negative));
                    }
                } else if (arc0) {
                    emit(MorseEvent::cross(q + 1, e.sign));
                    emit(MorseEvent::cross(
                        q, left_over ? CrossSign::Virtual : CrossSign::Negative));
                } else if (arc1) {
                    emit(MorseEvent::cross(
                        q, left_over ? CrossSign::Positive : CrossSign::Virtual));
                    emit(MorseEvent::cross(q + 1, e.sign));
                } else {
                    emit(MorseEvent::cross(q, e.sign));
                }
                break;
            }
        }
        cur.erase(cur.begin() + e.pos, cur.begin() + e.pos + e.width_below());
        cur.insert(cur.begin() + e.pos, sw.out_segs[i].begin(), sw.out_segs[i].end());
    }
    return out;
}

}  // namespace

MorseDiagram add_handle(const MorseDiagram& d, int component, bool simplify) {
    SweepInfo sw = sweep_segments(d, false);
    int target = component - 1;
    if (component == 0) {
        target = 0;
        for (int c = 0; c < sw.n_components; ++c)
            if (sw.comp_open[c]) { target = c; break; }
    }
    if (target < 0 || target >= sw.n_components)
        throw std::invalid_argument("component index out of range");
    if (simplify && sw.comp_open[target] && kind_of(d) == DiagramKind::Arc) {
        MorseDiagram canon = canonicalize(d);
        return canonicalize(doubled_handle(canon, target));
    }
    return raw_handle(d, target);
}

}  // namespace weldinv
