#include "weldinv/moves.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace weldinv {

namespace {

using Ev = MorseEvent;
constexpr CrossSign Pos = CrossSign::Positive;
constexpr CrossSign Neg = CrossSign::Negative;
constexpr CrossSign Vrt = CrossSign::Virtual;

CrossSign flip(CrossSign s) {
    if (s == Pos) return Neg;
    if (s == Neg) return Pos;
    return Vrt;
}

bool classical(CrossSign s) { return s != Vrt; }

// Strand count entering each event (and w[n] = final count).
std::vector<int> widths(const MorseDiagram& d) {
    std::vector<int> w(d.events.size() + 1, 0);
    int c = 0;
    for (size_t i = 0; i < d.events.size(); ++i) {
        w[i] = c;
        c += d.events[i].width_above() - d.events[i].width_below();
    }
    w.back() = c;
    return w;
}

bool is_cross(const Ev& e, int p, CrossSign s) {
    return e.kind == EventKind::Cross && e.pos == p && e.sign == s;
}
bool is_cross_at(const Ev& e, int p) { return e.kind == EventKind::Cross && e.pos == p; }

// Replace events [i, i+len) with repl and validate the result.
std::optional<MorseDiagram> attempt(const MorseDiagram& d, int i, int len,
                                    const std::vector<Ev>& repl) {
    MorseDiagram out;
    out.component_labels = d.component_labels;
    out.events.reserve(d.events.size() - len + repl.size());
    out.events.insert(out.events.end(), d.events.begin(), d.events.begin() + i);
    out.events.insert(out.events.end(), repl.begin(), repl.end());
    out.events.insert(out.events.end(), d.events.begin() + i + len, d.events.end());
    if (!validate(out).empty()) return std::nullopt;
    return out;
}

// ---- kink (R1 / VR1) ----------------------------------------------------
// (a) [birth p+1 lu; cross p; death p+1]  (b) [birth p ru; cross p+1; death p]

std::optional<MorseDiagram> kink(const MorseDiagram& d, const Site& s, bool virt) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    if (s.forward) {
        int i = s.index;
        if (s.variant > 1 || i < 0 || i + 3 > n) return std::nullopt;
        if (ev[i].kind != EventKind::Birth || ev[i + 1].kind != EventKind::Cross ||
            ev[i + 2].kind != EventKind::Death)
            return std::nullopt;
        if (classical(ev[i + 1].sign) == virt) return std::nullopt;
        int p = std::min(ev[i].pos, ev[i + 1].pos);
        bool a = ev[i].pos == p + 1 && ev[i + 1].pos == p && ev[i + 2].pos == p + 1;
        bool b = ev[i].pos == p && ev[i + 1].pos == p + 1 && ev[i + 2].pos == p;
        if (s.variant == 0 ? !a : !b) return std::nullopt;
        return attempt(d, i, 3, {});
    }
    // insert: variant = pattern (a/b) * 2 + birth side
    int pat = s.variant / 2, side = s.variant % 2;
    if (s.variant > 3) return std::nullopt;
    BirthSide bs = side == 0 ? BirthSide::LeftUp : BirthSide::RightUp;
    CrossSign cs = virt ? Vrt : (side == 0 ? Pos : Neg);
    if (!virt) bs = pat == 0 ? BirthSide::LeftUp : BirthSide::RightUp;  // forced by flow
    int p = s.pos;
    std::vector<Ev> repl;
    if (pat == 0)
        repl = {Ev::birth(p + 1, bs), Ev::cross(p, cs), Ev::death(p + 1)};
    else
        repl = {Ev::birth(p, bs), Ev::cross(p + 1, cs), Ev::death(p)};
    return attempt(d, s.index, 0, repl);
}

// ---- cancelling crossing pair (R2 / VR2) --------------------------------

std::optional<MorseDiagram> pair_cancel(const MorseDiagram& d, const Site& s, bool virt) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    if (s.forward) {
        int i = s.index;
        if (i < 0 || i + 2 > n) return std::nullopt;
        if (ev[i].kind != EventKind::Cross || ev[i + 1].kind != EventKind::Cross ||
            ev[i].pos != ev[i + 1].pos)
            return std::nullopt;
        if (virt) {
            if (ev[i].sign != Vrt || ev[i + 1].sign != Vrt) return std::nullopt;
        } else {
            if (!classical(ev[i].sign) || ev[i + 1].sign != flip(ev[i].sign)) return std::nullopt;
            if (s.variant != (ev[i].sign == Pos ? 0 : 1)) return std::nullopt;
        }
        if (virt && s.variant != 0) return std::nullopt;
        return attempt(d, i, 2, {});
    }
    int p = s.pos;
    std::vector<Ev> repl;
    if (virt) {
        if (s.variant != 0) return std::nullopt;
        repl = {Ev::cross(p, Vrt), Ev::cross(p, Vrt)};
    } else {
        if (s.variant > 1) return std::nullopt;
        CrossSign first = s.variant == 0 ? Pos : Neg;
        repl = {Ev::cross(p, first), Ev::cross(p, flip(first))};
    }
    return attempt(d, s.index, 0, repl);
}

// ---- crossing triples (R3 / VR3 / Mixed / F1) ----------------------------
// [s1(p); s2(p+1); s3(p)] <-> [s3(p+1); s2(p); s1(p+1)] for the sound sign
// triples of each family; F2 configurations are not representable.

bool triple_allowed(MoveKind m, CrossSign a, CrossSign b, CrossSign c) {
    switch (m) {
        case MoveKind::R3:
            return classical(a) && classical(b) && classical(c) && (a == b || b == c);
        case MoveKind::VR3:
            return a == Vrt && b == Vrt && c == Vrt;
        case MoveKind::Mixed:
            return (classical(a) && b == Vrt && c == Vrt) ||
                   (a == Vrt && b == Vrt && classical(c)) ||
                   (a == Vrt && classical(b) && c == Vrt);
        case MoveKind::F1:
            // the sliding strand passes over both others
            return (a == Pos && b == Pos && c == Vrt) || (a == Vrt && b == Neg && c == Neg) ||
                   (a == Neg && b == Vrt && c == Pos);
        default:
            return false;
    }
}

std::optional<MorseDiagram> triple_swap(const MorseDiagram& d, MoveKind m, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.variant != 0 || i < 0 || i + 3 > n) return std::nullopt;
    for (int k = 0; k < 3; ++k)
        if (ev[i + k].kind != EventKind::Cross) return std::nullopt;
    if (s.forward) {
        int p = ev[i].pos;
        if (ev[i + 1].pos != p + 1 || ev[i + 2].pos != p) return std::nullopt;
        if (!triple_allowed(m, ev[i].sign, ev[i + 1].sign, ev[i + 2].sign)) return std::nullopt;
        return attempt(d, i, 3,
                       {Ev::cross(p + 1, ev[i + 2].sign), Ev::cross(p, ev[i + 1].sign),
                        Ev::cross(p + 1, ev[i].sign)});
    }
    int p = ev[i + 1].pos;
    if (ev[i].pos != p + 1 || ev[i + 2].pos != p + 1) return std::nullopt;
    // result reads bottom-up as (t3, t2, t1)
    if (!triple_allowed(m, ev[i + 2].sign, ev[i + 1].sign, ev[i].sign)) return std::nullopt;
    return attempt(d, i, 3,
                   {Ev::cross(p, ev[i + 2].sign), Ev::cross(p + 1, ev[i + 1].sign),
                    Ev::cross(p, ev[i].sign)});
}

// ---- arc end slides -------------------------------------------------------
// An end retracts across a crossing it passes under (or virtually).
// v0 [x+ p; endu p] -> [endu p+1]      v1 [x- p; endu p+1] -> [endu p]
// v2 [xv p; endu p] -> [endu p+1]      v3 [xv p; endu p+1] -> [endu p]
// v4 [endd p; x- p] -> [endd p+1]      v5 [endd p+1; x+ p] -> [endd p]
// v6 [endd p; xv p] -> [endd p+1]      v7 [endd p+1; xv p] -> [endd p]

std::optional<MorseDiagram> end_slide(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int v = s.variant, i = s.index;
    if (v < 0 || v > 7) return std::nullopt;
    bool up = v < 4;
    CrossSign cs = (v == 0 || v == 5) ? Pos : (v == 1 || v == 4) ? Neg : Vrt;
    int end_off = (v == 1 || v == 3 || v == 5 || v == 7) ? 1 : 0;  // end pos - cross pos
    if (s.forward) {
        if (i < 0 || i + 2 > n) return std::nullopt;
        const Ev& c = ev[up ? i : i + 1];
        const Ev& e = ev[up ? i + 1 : i];
        if (c.kind != EventKind::Cross || c.sign != cs) return std::nullopt;
        if (e.kind != (up ? EventKind::EndUp : EventKind::EndDown)) return std::nullopt;
        if (e.pos != c.pos + end_off) return std::nullopt;
        int q = c.pos + 1 - end_off;  // retracted end position
        return attempt(d, i, 2, {up ? Ev::endu(q) : Ev::endd(q)});
    }
    if (i < 0 || i + 1 > n) return std::nullopt;
    const Ev& e = ev[i];
    if (e.kind != (up ? EventKind::EndUp : EventKind::EndDown)) return std::nullopt;
    int p = e.pos - 1 + end_off;  // crossing position in the expanded form
    if (p < 0) return std::nullopt;
    std::vector<Ev> repl;
    Ev end = up ? Ev::endu(p + end_off) : Ev::endd(p + end_off);
    if (up)
        repl = {Ev::cross(p, cs), end};
    else
        repl = {end, Ev::cross(p, cs)};
    return attempt(d, i, 1, repl);
}

// ---- graph moves ----------------------------------------------------------

// GM1: bend a vertex leg pair around an extremum.
// v0 [birth p+b lu; vertex p (b+1)(a+1); death p+a] <-> [vertex p b a]
// v1 [birth p ru; vertex p+1 (b+1)(a+1); death p]   <-> [vertex p b a]
std::optional<MorseDiagram> vertex_bend(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.variant > 1) return std::nullopt;
    bool right = s.variant == 0;
    if (s.forward) {  // unbend
        if (i < 0 || i + 3 > n) return std::nullopt;
        const Ev &b = ev[i], &vx = ev[i + 1], &dd = ev[i + 2];
        if (b.kind != EventKind::Birth || vx.kind != EventKind::Vertex ||
            dd.kind != EventKind::Death)
            return std::nullopt;
        if (vx.below < 1 || vx.above < 1) return std::nullopt;
        int b0 = vx.below - 1, a0 = vx.above - 1;
        if (right) {
            if (b.side != BirthSide::LeftUp) return std::nullopt;
            if (vx.pos + b0 != b.pos || vx.pos + a0 != dd.pos) return std::nullopt;
            return attempt(d, i, 3, {Ev::vertex(vx.pos, b0, a0)});
        }
        if (b.side != BirthSide::RightUp) return std::nullopt;
        if (b.pos + 1 != vx.pos || dd.pos != b.pos) return std::nullopt;
        return attempt(d, i, 3, {Ev::vertex(b.pos, b0, a0)});
    }
    if (i < 0 || i >= n || ev[i].kind != EventKind::Vertex) return std::nullopt;
    int p = ev[i].pos, b0 = ev[i].below, a0 = ev[i].above;
    if (right)
        return attempt(d, i, 1,
                       {Ev::birth(p + b0, BirthSide::LeftUp), Ev::vertex(p, b0 + 1, a0 + 1),
                        Ev::death(p + a0)});
    return attempt(d, i, 1,
                   {Ev::birth(p, BirthSide::RightUp), Ev::vertex(p + 1, b0 + 1, a0 + 1),
                    Ev::death(p)});
}

// GM2: [vertex p b k; vertex p k a] <-> [vertex p b a]
std::optional<MorseDiagram> vertex_merge(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.forward) {
        if (s.variant != 0 || i < 0 || i + 2 > n) return std::nullopt;
        const Ev &x = ev[i], &y = ev[i + 1];
        if (x.kind != EventKind::Vertex || y.kind != EventKind::Vertex) return std::nullopt;
        if (x.pos != y.pos || x.above != y.below) return std::nullopt;
        return attempt(d, i, 2, {Ev::vertex(x.pos, x.below, y.above)});
    }
    int k = s.variant + 1;  // middle arity 1..3
    if (k < 1 || k > 3 || i < 0 || i >= n || ev[i].kind != EventKind::Vertex)
        return std::nullopt;
    const Ev& x = ev[i];
    return attempt(d, i, 1, {Ev::vertex(x.pos, x.below, k), Ev::vertex(x.pos, k, x.above)});
}

// GM3 (over), GM7 (virtual): slide a strand across a whole vertex.
// left:  [vertex p+1 b a; c(p)..c(p+a-1)] <-> [c(p)..c(p+b-1); vertex p b a]
// right: [vertex p b a; c(p+a-1)..c(p)]   <-> [c(p+b-1)..c(p); vertex p+1 b a]
std::optional<MorseDiagram> vertex_slide(const MorseDiagram& d, const Site& s, bool virt) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.variant > 1) return std::nullopt;
    bool from_left = s.variant == 0;
    CrossSign cs = virt ? Vrt : (from_left ? Pos : Neg);
    auto chain = [&](int first, int base, int count, bool ascending) {
        std::vector<Ev> out;
        for (int k = 0; k < count; ++k)
            out.push_back(Ev::cross(ascending ? base + k : base + count - 1 - k, cs));
        (void)first;
        return out;
    };
    auto match_chain = [&](int first, int base, int count, bool ascending) {
        if (first < 0 || first + count > n) return false;
        for (int k = 0; k < count; ++k) {
            int p = ascending ? base + k : base + count - 1 - k;
            if (!is_cross(ev[first + k], p, cs)) return false;
        }
        return true;
    };
    if (s.forward) {  // vertex-first form -> crossings-first form
        if (i < 0 || i >= n || ev[i].kind != EventKind::Vertex) return std::nullopt;
        int b = ev[i].below, a = ev[i].above;
        if (from_left) {
            int p = ev[i].pos - 1;
            if (p < 0 || !match_chain(i + 1, p, a, true)) return std::nullopt;
            std::vector<Ev> repl = chain(0, p, b, true);
            repl.push_back(Ev::vertex(p, b, a));
            return attempt(d, i, 1 + a, repl);
        }
        int p = ev[i].pos;
        if (!match_chain(i + 1, p, a, false)) return std::nullopt;
        std::vector<Ev> repl = chain(0, p, b, false);
        repl.push_back(Ev::vertex(p + 1, b, a));
        return attempt(d, i, 1 + a, repl);
    }
    // crossings-first form -> vertex-first form; the vertex pins the arity.
    if (i < 0) return std::nullopt;
    for (int b = 0; i + b < n; ++b) {
        if (ev[i + b].kind == EventKind::Vertex) {
            const Ev& vx = ev[i + b];
            if (vx.below != b) return std::nullopt;
            int a = vx.above;
            if (from_left) {
                int p = vx.pos;
                if (!match_chain(i, p, b, true)) return std::nullopt;
                std::vector<Ev> repl = {Ev::vertex(p + 1, b, a)};
                auto c = chain(0, p, a, true);
                repl.insert(repl.end(), c.begin(), c.end());
                return attempt(d, i, b + 1, repl);
            }
            int p = vx.pos - 1;
            if (p < 0 || !match_chain(i, p, b, false)) return std::nullopt;
            std::vector<Ev> repl = {Ev::vertex(p, b, a)};
            auto c = chain(0, p, a, false);
            repl.insert(repl.end(), c.begin(), c.end());
            return attempt(d, i, b + 1, repl);
        }
        if (ev[i + b].kind != EventKind::Cross) return std::nullopt;
    }
    return std::nullopt;
}

// GM4: slide a strand under a vertex; one classical undercrossing next to the
// vertex, virtual crossings past the remaining legs.
// right: [x+ p+b-1; xv p+b-2 .. xv p; vertex p+1 b a]
//          <-> [vertex p b a; x+ p+a-1; xv p+a-2 .. xv p]
// left:  [x- p; xv p+1 .. xv p+b-1; vertex p b a]
//          <-> [vertex p+1 b a; x- p; xv p+1 .. xv p+a-1]
std::optional<MorseDiagram> vertex_under(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.variant > 1) return std::nullopt;
    bool from_right = s.variant == 0;
    CrossSign cs = from_right ? Pos : Neg;
    auto mixed_chain = [&](int base, int count) {
        // crossing sequence for passing `count` strands, classical first
        std::vector<Ev> out;
        if (count == 0) return out;
        if (from_right) {
            out.push_back(Ev::cross(base + count - 1, cs));
            for (int p = base + count - 2; p >= base; --p) out.push_back(Ev::cross(p, Vrt));
        } else {
            out.push_back(Ev::cross(base, cs));
            for (int p = base + 1; p < base + count; ++p) out.push_back(Ev::cross(p, Vrt));
        }
        return out;
    };
    auto match_mixed = [&](int first, int base, int count) {
        auto want = mixed_chain(base, count);
        if (first < 0 || first + (int)want.size() > n) return false;
        for (size_t k = 0; k < want.size(); ++k)
            if (!(ev[first + k] == want[k])) return false;
        return true;
    };
    if (s.forward) {  // crossings-first form -> vertex-first form
        for (int b = 1; i + b < n; ++b) {
            if (ev[i + b].kind == EventKind::Vertex) {
                const Ev& vx = ev[i + b];
                if (vx.below != b) return std::nullopt;
                int a = vx.above;
                if (a < 1) return std::nullopt;
                int p = from_right ? vx.pos - 1 : vx.pos;
                if (p < 0 || !match_mixed(i, p, b)) return std::nullopt;
                std::vector<Ev> repl = {Ev::vertex(from_right ? p : p + 1, b, a)};
                auto c = mixed_chain(p, a);
                repl.insert(repl.end(), c.begin(), c.end());
                return attempt(d, i, b + 1, repl);
            }
            if (ev[i + b].kind != EventKind::Cross) return std::nullopt;
        }
        return std::nullopt;
    }
    if (i < 0 || i >= n || ev[i].kind != EventKind::Vertex) return std::nullopt;
    const Ev& vx = ev[i];
    int b = vx.below, a = vx.above;
    if (b < 1 || a < 1) return std::nullopt;
    int p = vx.pos;
    if (!from_right) {
        if (p < 1) return std::nullopt;
        --p;  // vertex sits at p+1 in the left after-form
    }
    if (!match_mixed(i + 1, p, a)) return std::nullopt;
    std::vector<Ev> repl = mixed_chain(p, b);
    repl.push_back(Ev::vertex(from_right ? p + 1 : p, b, a));
    return attempt(d, i, 1 + a, repl);
}

// GM5: [vertex p 1 1] <-> []
std::optional<MorseDiagram> vertex_unary(const MorseDiagram& d, const Site& s) {
    if (s.variant != 0) return std::nullopt;
    if (s.forward) {
        int i = s.index;
        if (i < 0 || i >= (int)d.events.size()) return std::nullopt;
        const Ev& v = d.events[i];
        if (v.kind != EventKind::Vertex || v.below != 1 || v.above != 1) return std::nullopt;
        return attempt(d, i, 1, {});
    }
    return attempt(d, s.index, 0, {Ev::vertex(s.pos, 1, 1)});
}

// GM6: v0/v1 [endd p; vertex p 1 2] <-> [birth p lu|ru]
//      v2    [vertex p 2 1; endu p] <-> [death p]
std::optional<MorseDiagram> vertex_end(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index, v = s.variant;
    if (v < 0 || v > 2) return std::nullopt;
    if (s.forward) {
        if (i < 0 || i + 2 > n) return std::nullopt;
        if (v < 2) {
            if (ev[i].kind != EventKind::EndDown || ev[i + 1].kind != EventKind::Vertex)
                return std::nullopt;
            const Ev& vx = ev[i + 1];
            if (vx.pos != ev[i].pos || vx.below != 1 || vx.above != 2) return std::nullopt;
            BirthSide bs = v == 0 ? BirthSide::LeftUp : BirthSide::RightUp;
            return attempt(d, i, 2, {Ev::birth(ev[i].pos, bs)});
        }
        if (ev[i].kind != EventKind::Vertex || ev[i + 1].kind != EventKind::EndUp)
            return std::nullopt;
        const Ev& vx = ev[i];
        if (vx.below != 2 || vx.above != 1 || vx.pos != ev[i + 1].pos) return std::nullopt;
        return attempt(d, i, 2, {Ev::death(vx.pos)});
    }
    if (i < 0 || i >= n) return std::nullopt;
    if (v < 2) {
        if (ev[i].kind != EventKind::Birth) return std::nullopt;
        if (ev[i].side != (v == 0 ? BirthSide::LeftUp : BirthSide::RightUp)) return std::nullopt;
        return attempt(d, i, 1, {Ev::endd(ev[i].pos), Ev::vertex(ev[i].pos, 1, 2)});
    }
    if (ev[i].kind != EventKind::Death) return std::nullopt;
    return attempt(d, i, 1, {Ev::vertex(ev[i].pos, 2, 1), Ev::endu(ev[i].pos)});
}

// ---- Yetter moves ---------------------------------------------------------

// Exchange two adjacent events with disjoint strand spans.
std::optional<MorseDiagram> exchange(const MorseDiagram& d, const Site& s) {
    if (s.variant != 0) return std::nullopt;
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (i < 0 || i + 2 > n) return std::nullopt;
    Ev a = ev[i], b = ev[i + 1];
    int wa_b = a.width_below(), wa_a = a.width_above();
    int wb_b = b.width_below(), wb_a = b.width_above();
    if (b.pos >= a.pos + wa_a) {
        b.pos -= wa_a - wa_b;  // b is above a's span
    } else if (b.pos + wb_b <= a.pos) {
        a.pos += wb_a - wb_b;  // b is below a's span
    } else {
        return std::nullopt;
    }
    return attempt(d, i, 2, {b, a});
}

// Cancel or insert a zig-zag: [birth p; death p+1] / [birth p+1; death p].
std::optional<MorseDiagram> snake(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    if (s.forward) {
        if (s.variant > 1 || i < 0 || i + 2 > n) return std::nullopt;
        if (ev[i].kind != EventKind::Birth || ev[i + 1].kind != EventKind::Death)
            return std::nullopt;
        int off = s.variant == 0 ? 1 : -1;
        if (ev[i + 1].pos != ev[i].pos + off) return std::nullopt;
        return attempt(d, i, 2, {});
    }
    // insert: variant = shape (0/1) * 2 + birth side
    if (s.variant > 3) return std::nullopt;
    int shape = s.variant / 2;
    BirthSide bs = s.variant % 2 == 0 ? BirthSide::LeftUp : BirthSide::RightUp;
    int p = s.pos;
    std::vector<Ev> repl;
    if (shape == 0)
        repl = {Ev::birth(p, bs), Ev::death(p + 1)};
    else
        repl = {Ev::birth(p + 1, bs), Ev::death(p)};
    return attempt(d, s.index, 0, repl);
}

// Slide a crossing past an adjacent extremum (virtual crossings only survive
// validation; classical slides are realized by canonicalization instead).
// v0 [cross p s; death p+1] -> [cross p+1 ~s; death p]     v1: reverse shapes
// v2 [birth p+1 S; cross p s] -> [birth p S; cross p+1 ~s] v3: reverse shapes
std::optional<MorseDiagram> cross_slide(const MorseDiagram& d, const Site& s) {
    const auto& ev = d.events;
    int n = (int)ev.size();
    int i = s.index;
    int v = s.variant;
    if (v < 0 || v > 3) return std::nullopt;
    if (!s.forward) v ^= 1;  // backward = the paired shape
    if (i < 0 || i + 2 > n) return std::nullopt;
    if (v == 0 || v == 1) {
        const Ev &c = ev[i], &dd = ev[i + 1];
        if (c.kind != EventKind::Cross || dd.kind != EventKind::Death) return std::nullopt;
        if (v == 0) {
            if (dd.pos != c.pos + 1) return std::nullopt;
            return attempt(d, i, 2, {Ev::cross(c.pos + 1, flip(c.sign)), Ev::death(c.pos)});
        }
        if (dd.pos + 1 != c.pos) return std::nullopt;
        return attempt(d, i, 2, {Ev::cross(c.pos - 1, flip(c.sign)), Ev::death(c.pos)});
    }
    const Ev &b = ev[i], &c = ev[i + 1];
    if (b.kind != EventKind::Birth || c.kind != EventKind::Cross) return std::nullopt;
    if (v == 2) {
        if (b.pos != c.pos + 1) return std::nullopt;
        return attempt(d, i, 2, {Ev::birth(c.pos, b.side), Ev::cross(c.pos + 1, flip(c.sign))});
    }
    if (b.pos + 1 != c.pos) return std::nullopt;
    return attempt(d, i, 2, {Ev::birth(c.pos, b.side), Ev::cross(c.pos - 1, flip(c.sign))});
}

std::optional<MorseDiagram> try_apply(const MorseDiagram& d, MoveKind m, const Site& s) {
    switch (m) {
        case MoveKind::R1: return kink(d, s, false);
        case MoveKind::VR1: return kink(d, s, true);
        case MoveKind::R2: return pair_cancel(d, s, false);
        case MoveKind::VR2: return pair_cancel(d, s, true);
        case MoveKind::R3:
        case MoveKind::VR3:
        case MoveKind::Mixed:
        case MoveKind::F1: return triple_swap(d, m, s);
        case MoveKind::ArcEndSlide: return end_slide(d, s);
        case MoveKind::GraphMove1: return vertex_bend(d, s);
        case MoveKind::GraphMove2: return vertex_merge(d, s);
        case MoveKind::GraphMove3: return vertex_slide(d, s, false);
        case MoveKind::GraphMove4: return vertex_under(d, s);
        case MoveKind::GraphMove5: return vertex_unary(d, s);
        case MoveKind::GraphMove6: return vertex_end(d, s);
        case MoveKind::GraphMove7: return vertex_slide(d, s, true);
        case MoveKind::YetterExchange: return exchange(d, s);
        case MoveKind::YetterCancel: return snake(d, s);
        case MoveKind::YetterCrossSlide: return cross_slide(d, s);
    }
    return std::nullopt;
}

// Scan ranges: how many variants each family has per direction, and whether
// the backward direction inserts at a (index, pos) point.
struct ScanSpec {
    int fwd_variants = 1;
    int bwd_variants = 1;
    bool bwd_inserts = false;
};

ScanSpec scan_spec(MoveKind m) {
    switch (m) {
        case MoveKind::R1: return {2, 4, true};
        case MoveKind::VR1: return {2, 4, true};
        case MoveKind::R2: return {2, 2, true};
        case MoveKind::VR2: return {1, 1, true};
        case MoveKind::R3:
        case MoveKind::VR3:
        case MoveKind::Mixed:
        case MoveKind::F1: return {1, 1, false};
        case MoveKind::ArcEndSlide: return {8, 8, false};
        case MoveKind::GraphMove1: return {2, 2, false};
        case MoveKind::GraphMove2: return {1, 3, false};
        case MoveKind::GraphMove3: return {2, 2, false};
        case MoveKind::GraphMove4: return {2, 2, false};
        case MoveKind::GraphMove5: return {1, 1, true};
        case MoveKind::GraphMove6: return {3, 3, false};
        case MoveKind::YetterExchange: return {1, 0, false};
        case MoveKind::YetterCancel: return {2, 4, true};
        case MoveKind::YetterCrossSlide: return {4, 0, false};
        case MoveKind::GraphMove7: return {2, 2, false};
    }
    return {};
}

}  // namespace

const char* move_name(MoveKind m) {
    switch (m) {
        case MoveKind::R1: return "R1";
        case MoveKind::R2: return "R2";
        case MoveKind::R3: return "R3";
        case MoveKind::VR1: return "VR1";
        case MoveKind::VR2: return "VR2";
        case MoveKind::VR3: return "VR3";
        case MoveKind::Mixed: return "Mixed";
        case MoveKind::F1: return "F1";
        case MoveKind::ArcEndSlide: return "ArcEndSlide";
        case MoveKind::GraphMove1: return "GraphMove1";
        case MoveKind::GraphMove2: return "GraphMove2";
        case MoveKind::GraphMove3: return "GraphMove3";
        case MoveKind::GraphMove4: return "GraphMove4";
        case MoveKind::GraphMove5: return "GraphMove5";
        case MoveKind::GraphMove6: return "GraphMove6";
        case MoveKind::GraphMove7: return "GraphMove7";
        case MoveKind::YetterExchange: return "YetterExchange";
        case MoveKind::YetterCancel: return "YetterCancel";
        case MoveKind::YetterCrossSlide: return "YetterCrossSlide";
    }
    return "?";
}

const std::vector<MoveKind>& all_move_kinds() {
    static const std::vector<MoveKind> kinds = {
        MoveKind::R1,         MoveKind::R2,         MoveKind::R3,
        MoveKind::VR1,        MoveKind::VR2,        MoveKind::VR3,
        MoveKind::Mixed,      MoveKind::F1,         MoveKind::ArcEndSlide,
        MoveKind::GraphMove1, MoveKind::GraphMove2, MoveKind::GraphMove3,
        MoveKind::GraphMove4, MoveKind::GraphMove5, MoveKind::GraphMove6,
        MoveKind::GraphMove7, MoveKind::YetterExchange, MoveKind::YetterCancel,
        MoveKind::YetterCrossSlide};
    return kinds;
}

MorseDiagram apply_move(const MorseDiagram& d, MoveKind m, const Site& site) {
    auto out = try_apply(d, m, site);
    if (!out) throw std::invalid_argument(std::string(move_name(m)) + ": move not applicable");
    return *out;
}

std::vector<Site> enumerate_sites(const MorseDiagram& d, MoveKind m) {
    std::vector<Site> sites;
    int n = (int)d.events.size();
    auto w = widths(d);
    ScanSpec spec = scan_spec(m);
    for (int variant = 0; variant < spec.fwd_variants; ++variant)
        for (int i = 0; i < n; ++i) {
            Site s{i, 0, true, variant};
            if (try_apply(d, m, s)) sites.push_back(s);
        }
    for (int variant = 0; variant < spec.bwd_variants; ++variant)
        for (int i = 0; i <= n; ++i) {
            if (spec.bwd_inserts) {
                for (int pos = 0; pos < w[i]; ++pos) {
                    Site s{i, pos, false, variant};
                    if (try_apply(d, m, s)) sites.push_back(s);
                }
            } else if (i < n) {
                Site s{i, 0, false, variant};
                if (try_apply(d, m, s)) sites.push_back(s);
            }
        }
    return sites;
}

MorseDiagram random_equivalent(const MorseDiagram& d, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    MorseDiagram cur = d;
    size_t budget = std::max(d.events.size() + 8, (size_t)26);
    const auto& kinds = all_move_kinds();
    for (int step = 0; step < steps; ++step) {
        // Rejection-sample a site from the same space enumerate_sites scans;
        // a burst of cheap tries avoids materialising every candidate.
        auto w = widths(cur);
        int n = (int)cur.events.size();
        for (int tries = 0; tries < 512; ++tries) {
            MoveKind m = kinds[rng() % kinds.size()];
            ScanSpec spec = scan_spec(m);
            int nv = spec.fwd_variants + spec.bwd_variants;
            if (nv == 0 || n == 0) continue;
            int v = int(rng() % nv);
            Site s{0, 0, true, 0};
            if (v < spec.fwd_variants) {
                s = Site{int(rng() % n), 0, true, v};
            } else if (spec.bwd_inserts) {
                int i = int(rng() % (n + 1));
                if (w[i] == 0) continue;
                s = Site{i, int(rng() % w[i]), false, v - spec.fwd_variants};
            } else {
                s = Site{int(rng() % n), 0, false, v - spec.fwd_variants};
            }
            auto out = try_apply(cur, m, s);
            if (!out) continue;
            if (cur.events.size() >= budget && out->events.size() > cur.events.size()) continue;
            cur = std::move(*out);
            break;
        }
    }
    return cur;
}

}  // namespace weldinv
