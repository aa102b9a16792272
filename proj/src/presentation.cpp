#include "weldinv/presentation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace weldinv {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Free reduction in place.
void reduce_word(std::vector<int>& w) {
    std::vector<int> out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    w = std::move(out);
}

void cyclic_reduce(std::vector<int>& w) {
    reduce_word(w);
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
        reduce_word(w);
    }
}

std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> inv(w.rbegin(), w.rend());
    for (int& x : inv) x = -x;
    return inv;
}

// Canonical representative of a relation up to rotation and inversion.
std::vector<int> cyclic_canonical(std::vector<int> w) {
    cyclic_reduce(w);
    std::vector<int> best = w;
    for (const std::vector<int>& base : {w, inverse_word(w)}) {
        std::vector<int> rot = base;
        for (size_t i = 0; i < base.size(); ++i) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            best = std::min(best, rot);
        }
    }
    return best;
}

}  // namespace

FinitePresentation wirtinger_presentation(const MorseDiagram& d) {
    SweepInfo sw = sweep_segments(d);
    Dsu dsu(sw.n_segments);
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        const auto& in = sw.in_segs[i];
        const auto& out = sw.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth: dsu.unite(out[0], out[1]); break;
            case EventKind::Death: dsu.unite(in[0], in[1]); break;
            case EventKind::Vertex:
                for (int s : in) dsu.unite(s, e.below ? in[0] : out[0]);
                for (int s : out) dsu.unite(s, e.below ? in[0] : out[0]);
                break;
            case EventKind::Cross:
                if (e.sign == CrossSign::Virtual) {
                    dsu.unite(in[0], out[1]);
                    dsu.unite(in[1], out[0]);
                } else if (e.sign == CrossSign::Positive) {
                    dsu.unite(in[0], out[1]);  // over strand
                } else {
                    dsu.unite(in[1], out[0]);
                }
                break;
            case EventKind::EndUp:
            case EventKind::EndDown: break;
        }
    }
    // Number the classes by first segment appearance.
    std::map<int, int> gen_of;
    for (int s = 0; s < sw.n_segments; ++s) {
        int r = dsu.find(s);
        if (!gen_of.count(r)) {
            int next = (int)gen_of.size();
            gen_of[r] = next;
        }
    }
    auto gen = [&](int seg) { return gen_of[dsu.find(seg)] + 1; };

    FinitePresentation p;
    p.n_generators = (int)gen_of.size();
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        if (e.kind != EventKind::Cross || e.sign == CrossSign::Virtual) continue;
        const auto& in = sw.in_segs[i];
        const auto& out = sw.out_segs[i];
        std::vector<int> w;
        if (e.sign == CrossSign::Positive) {
            int a = gen(in[0]), u = gen(in[1]), o = gen(out[0]);
            w = {-o, -a, u, a};  // out = a^-1 u a
        } else {
            int b = gen(in[1]), u = gen(in[0]), o = gen(out[1]);
            w = {-o, b, u, -b};  // out = b u b^-1
        }
        reduce_word(w);
        if (!w.empty()) p.relations.push_back(std::move(w));
    }
    return p;
}

FinitePresentation simplify_presentation(const FinitePresentation& p, size_t max_len) {
    int n = p.n_generators;
    std::vector<std::vector<int>> rels = p.relations;
    for (auto& w : rels) cyclic_reduce(w);

    auto drop_trivial = [&]() {
        std::vector<std::vector<int>> keep;
        std::vector<std::vector<int>> seen;
        for (auto& w : rels) {
            if (w.empty()) continue;
            auto c = cyclic_canonical(w);
            if (std::find(seen.begin(), seen.end(), c) != seen.end()) continue;
            seen.push_back(c);
            keep.push_back(w);
        }
        rels = std::move(keep);
    };
    drop_trivial();

    bool changed = true;
    while (changed) {
        changed = false;
        // Find a relation using some generator exactly once; shortest first.
        std::vector<size_t> order(rels.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return rels[a].size() < rels[b].size(); });
        for (size_t ri : order) {
            const std::vector<int>& w = rels[ri];
            if (w.size() > max_len) continue;
            int victim = 0;
            size_t at = 0;
            for (size_t k = 0; k < w.size() && victim == 0; ++k) {
                int g = std::abs(w[k]);
                int cnt = 0;
                for (int x : w) cnt += std::abs(x) == g;
                if (cnt == 1) {
                    victim = g;
                    at = k;
                }
            }
            if (victim == 0) continue;
            // w = u victim^s v  =>  victim^s = u^-1 v^-1.
            std::vector<int> u(w.begin(), w.begin() + at);
            std::vector<int> v(w.begin() + at + 1, w.end());
            std::vector<int> rhs = inverse_word(u);
            std::vector<int> vinv = inverse_word(v);
            rhs.insert(rhs.end(), vinv.begin(), vinv.end());
            if (w[at] < 0) rhs = inverse_word(rhs);  // victim itself
            // Substitute into every other relation.
            std::vector<std::vector<int>> next;
            for (size_t j = 0; j < rels.size(); ++j) {
                if (j == ri) continue;
                std::vector<int> out;
                for (int x : rels[j]) {
                    if (std::abs(x) != victim) {
                        out.push_back(x);
                    } else if (x > 0) {
                        out.insert(out.end(), rhs.begin(), rhs.end());
                    } else {
                        auto r = inverse_word(rhs);
                        out.insert(out.end(), r.begin(), r.end());
                    }
                }
                cyclic_reduce(out);
                next.push_back(std::move(out));
            }
            // Renumber: victim removed.
            for (auto& rw : next)
                for (int& x : rw) {
                    int g = std::abs(x);
                    if (g > victim) x = x > 0 ? x - 1 : x + 1;
                }
            rels = std::move(next);
            --n;
            drop_trivial();
            changed = true;
            break;
        }
    }
    // Drop generators never mentioned only if they are beyond the mentioned
    // range?  No: free generators are part of the group; keep the count.
    FinitePresentation out;
    out.n_generators = n;
    out.relations = std::move(rels);
    std::sort(out.relations.begin(), out.relations.end());
    return out;
}

mpz_class group_hom_count(const FinitePresentation& p, GroupPtr g) {
    int n = p.n_generators;
    const FiniteGroup& G = *g;
    // Schedule each relation at the depth where its last generator appears.
    std::vector<std::vector<const std::vector<int>*>> due(n + 1);
    for (const auto& w : p.relations) {
        int last = 0;
        for (int x : w) last = std::max(last, std::abs(x));
        if (last == 0) continue;  // empty word
        due[last].push_back(&w);
    }
    std::vector<int> img(n + 1, G.identity());
    mpz_class total = 0;
    auto holds = [&](const std::vector<int>& w) {
        int acc = G.identity();
        for (int x : w) acc = G.mul(acc, x > 0 ? img[x] : G.inv(img[-x]));
        return acc == G.identity();
    };
    // Depth-first over generator images.
    std::vector<int> choice(n + 1, 0);
    int depth = 1;
    if (n == 0) return 1;
    while (depth >= 1) {
        if (choice[depth] >= G.order()) {
            choice[depth] = 0;
            --depth;
            if (depth >= 1) ++choice[depth];
            continue;
        }
        img[depth] = choice[depth];
        bool ok = true;
        for (const auto* w : due[depth])
            if (!holds(*w)) {
                ok = false;
                break;
            }
        if (!ok) {
            ++choice[depth];
            continue;
        }
        if (depth == n) {
            ++total;
            ++choice[depth];
            continue;
        }
        ++depth;
    }
    return total;
}

}  // namespace weldinv
