#include "weldinv/modpres.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "weldinv/snf.hpp"

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

// comp -> variable index from an optional permutation (variable i covers
// component ordering[i]).
std::vector<int> comp_to_var(int n_comps, const std::vector<int>& ordering) {
    std::vector<int> ord = ordering;
    if (ord.empty()) {
        ord.resize(n_comps);
        std::iota(ord.begin(), ord.end(), 0);
    }
    if ((int)ord.size() != n_comps) throw std::invalid_argument("bad component ordering");
    std::vector<int> inv(n_comps, -1);
    for (int i = 0; i < n_comps; ++i) {
        if (ord[i] < 0 || ord[i] >= n_comps || inv[ord[i]] != -1)
            throw std::invalid_argument("component ordering is not a permutation");
        inv[ord[i]] = i;
    }
    return inv;
}

LaurentPoly unit(int nv) { return LaurentPoly::constant(nv, 1); }

}  // namespace

LaurentPresentation cm_presentation(const MorseDiagram& d,
                                    const std::vector<int>& ordering, bool eliminate) {
    if (kind_of(d) == DiagramKind::Graph)
        throw std::invalid_argument("cm_presentation expects a knot, link, or arc");
    SweepInfo sw = sweep_segments(d);
    int nv = sw.n_components;
    std::vector<int> cvar = comp_to_var(nv, ordering);

    LaurentPresentation p;
    p.n_generators = sw.n_segments;
    p.n_vars = nv;
    p.var_component.resize(nv);
    for (int c = 0; c < nv; ++c) p.var_component[cvar[c]] = c;

    auto var_of = [&](int seg, int power) {
        return LaurentPoly::monomial(nv, cvar[sw.seg_component[seg]], power);
    };
    auto row = [&]() { return std::vector<LaurentPoly>(sw.n_segments, LaurentPoly::zero(nv)); };

    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        const auto& in = sw.in_segs[i];
        const auto& out = sw.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth: {
                auto r = row();
                r[out[0]] = r[out[0]] + unit(nv);
                r[out[1]] = r[out[1]] + unit(nv);
                p.relations.push_back(std::move(r));
                break;
            }
            case EventKind::Death: {
                auto r = row();
                r[in[0]] = r[in[0]] + unit(nv);
                r[in[1]] = r[in[1]] + unit(nv);
                p.relations.push_back(std::move(r));
                break;
            }
            case EventKind::EndUp:
            case EventKind::EndDown: {
                auto r = row();
                int seg = e.kind == EventKind::EndUp ? in[0] : out[0];
                r[seg] = unit(nv);
                p.relations.push_back(std::move(r));
                break;
            }
            case EventKind::Cross: {
                auto r1 = row(), r2 = row();
                if (e.sign == CrossSign::Virtual) {
                    r1[out[0]] = unit(nv);
                    r1[in[1]] = r1[in[1]] - unit(nv);
                    r2[out[1]] = unit(nv);
                    r2[in[0]] = r2[in[0]] - unit(nv);
                } else if (e.sign == CrossSign::Positive) {
                    LaurentPoly ai = var_of(in[0], -1);  // over strand acts
                    r1[out[0]] = unit(nv);
                    r1[in[1]] = r1[in[1]] - ai;
                    r2[out[1]] = unit(nv);
                    r2[in[0]] = r2[in[0]] - unit(nv);
                    r2[in[1]] = r2[in[1]] - unit(nv) + ai;
                } else {
                    LaurentPoly b = var_of(in[1], 1);
                    r1[out[0]] = unit(nv);
                    r1[in[0]] = r1[in[0]] - unit(nv) + b;
                    r1[in[1]] = r1[in[1]] - unit(nv);
                    r2[out[1]] = unit(nv);
                    r2[in[0]] = r2[in[0]] - b;
                }
                p.relations.push_back(std::move(r1));
                p.relations.push_back(std::move(r2));
                break;
            }
            case EventKind::Vertex: break;  // unreachable: graphs rejected
        }
    }

    if (!eliminate) return p;

    // Substitute away generators carried by a single-term ±X^e entry.
    auto& rels = p.relations;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t r = 0; r < rels.size() && !changed; ++r)
            for (int c = 0; c < p.n_generators && !changed; ++c) {
                const LaurentPoly& piv = rels[r][c];
                if (piv.terms.size() != 1) continue;
                const auto& [pe, pc] = *piv.terms.begin();
                if (pc != 1 && pc != -1) continue;
                std::vector<int> ie(pe.size());
                for (size_t t = 0; t < pe.size(); ++t) ie[t] = -pe[t];
                LaurentPoly pinv{nv, {{ie, pc}}};  // (c X^e)^-1 = c X^-e
                for (size_t r2 = 0; r2 < rels.size(); ++r2) {
                    if (r2 == r || rels[r2][c].is_zero()) continue;
                    LaurentPoly f = rels[r2][c] * pinv;
                    for (int j = 0; j < p.n_generators; ++j)
                        rels[r2][j] = rels[r2][j] - f * rels[r][j];
                }
                rels.erase(rels.begin() + r);
                for (auto& rr : rels) rr.erase(rr.begin() + c);
                --p.n_generators;
                changed = true;
            }
    }
    rels.erase(std::remove_if(rels.begin(), rels.end(),
                              [](const std::vector<LaurentPoly>& rr) {
                                  return std::all_of(rr.begin(), rr.end(),
                                                     [](const LaurentPoly& q) {
                                                         return q.is_zero();
                                                     });
                              }),
               rels.end());
    return p;
}

namespace {

// Shared scaffolding for the two Alexander-style presentations.
struct MergeBuild {
    SweepInfo sw;
    Dsu dsu;
    std::vector<int> gen_of_class;
    int n_gens = 0;

    explicit MergeBuild(const MorseDiagram& d) : sw(sweep_segments(d)), dsu(sw.n_segments) {}

    void number() {
        gen_of_class.assign(sw.n_segments, -1);
        for (int s = 0; s < sw.n_segments; ++s) {
            int r = dsu.find(s);
            if (gen_of_class[r] < 0) gen_of_class[r] = n_gens++;
        }
    }
    int gen(int seg) { return gen_of_class[dsu.find(seg)]; }
};

}  // namespace

LaurentPresentation alex_presentation(const MorseDiagram& d) {
    MergeBuild mb(d);
    const SweepInfo& sw = mb.sw;
    int nv = sw.n_components;
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        const auto& in = sw.in_segs[i];
        const auto& out = sw.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth: mb.dsu.unite(out[0], out[1]); break;
            case EventKind::Death: mb.dsu.unite(in[0], in[1]); break;
            case EventKind::Vertex: {
                int anchor = e.below ? in[0] : out[0];
                for (int s : in) mb.dsu.unite(s, anchor);
                for (int s : out) mb.dsu.unite(s, anchor);
                break;
            }
            case EventKind::Cross:
                if (e.sign == CrossSign::Virtual) {
                    mb.dsu.unite(in[0], out[1]);
                    mb.dsu.unite(in[1], out[0]);
                } else if (e.sign == CrossSign::Positive) {
                    mb.dsu.unite(in[0], out[1]);
                } else {
                    mb.dsu.unite(in[1], out[0]);
                }
                break;
            case EventKind::EndUp:
            case EventKind::EndDown: break;
        }
    }
    mb.number();

    LaurentPresentation p;
    p.n_generators = mb.n_gens;
    p.n_vars = nv;
    p.var_component.resize(nv);
    std::iota(p.var_component.begin(), p.var_component.end(), 0);
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        if (e.kind != EventKind::Cross || e.sign == CrossSign::Virtual) continue;
        const auto& in = mb.sw.in_segs[i];
        const auto& out = mb.sw.out_segs[i];
        std::vector<LaurentPoly> r(p.n_generators, LaurentPoly::zero(nv));
        if (e.sign == CrossSign::Positive) {
            // under-out = O.under-in + (1-U).over; O/U the over/under variables
            LaurentPoly O = LaurentPoly::monomial(nv, sw.seg_component[in[0]], 1);
            LaurentPoly U = LaurentPoly::monomial(nv, sw.seg_component[in[1]], 1);
            r[mb.gen(out[0])] = r[mb.gen(out[0])] + unit(nv);
            r[mb.gen(in[1])] = r[mb.gen(in[1])] - O;
            r[mb.gen(in[0])] = r[mb.gen(in[0])] - unit(nv) + U;
        } else {
            // under-out = O^-1.under-in + (O^-1 U - O^-1).over
            LaurentPoly Oi = LaurentPoly::monomial(nv, sw.seg_component[in[1]], -1);
            LaurentPoly U = LaurentPoly::monomial(nv, sw.seg_component[in[0]], 1);
            r[mb.gen(out[1])] = r[mb.gen(out[1])] + unit(nv);
            r[mb.gen(in[0])] = r[mb.gen(in[0])] - Oi;
            r[mb.gen(in[1])] = r[mb.gen(in[1])] - Oi * U + Oi;
        }
        p.relations.push_back(std::move(r));
    }
    return p;
}

LaurentPresentation alex_prime_presentation(const MorseDiagram& d) {
    MergeBuild mb(d);
    const SweepInfo& sw = mb.sw;
    int nv = sw.n_components;
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        const auto& in = sw.in_segs[i];
        const auto& out = sw.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth: mb.dsu.unite(out[0], out[1]); break;
            case EventKind::Death: mb.dsu.unite(in[0], in[1]); break;
            case EventKind::Vertex: {
                int anchor = e.below ? in[0] : out[0];
                for (int s : in) mb.dsu.unite(s, anchor);
                for (int s : out) mb.dsu.unite(s, anchor);
                break;
            }
            default: break;
        }
    }
    mb.number();

    LaurentPresentation p;
    p.n_generators = mb.n_gens;
    p.n_vars = nv;
    p.var_component.resize(nv);
    std::iota(p.var_component.begin(), p.var_component.end(), 0);
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        if (e.kind != EventKind::Cross) continue;
        const auto& in = mb.sw.in_segs[i];
        const auto& out = mb.sw.out_segs[i];
        int u = mb.gen(in[0]), v = mb.gen(in[1]);
        int ol = mb.gen(out[0]), orr = mb.gen(out[1]);
        LaurentPoly A = LaurentPoly::monomial(nv, sw.seg_component[in[0]], 1);
        LaurentPoly Bi = LaurentPoly::monomial(nv, sw.seg_component[in[1]], -1);
        std::vector<LaurentPoly> r1(p.n_generators, LaurentPoly::zero(nv));
        std::vector<LaurentPoly> r2(p.n_generators, LaurentPoly::zero(nv));
        if (e.sign == CrossSign::Positive) {
            // out_left = (1-B).u + A.v ; out_right = u
            LaurentPoly B = LaurentPoly::monomial(nv, sw.seg_component[in[1]], 1);
            r1[ol] = r1[ol] + unit(nv);
            r1[u] = r1[u] - unit(nv) + B;
            r1[v] = r1[v] - A;
            r2[orr] = r2[orr] + unit(nv);
            r2[u] = r2[u] - unit(nv);
        } else if (e.sign == CrossSign::Negative) {
            // out_left = v ; out_right = B^-1.u + B^-1(A-1).v
            r1[ol] = r1[ol] + unit(nv);
            r1[v] = r1[v] - unit(nv);
            r2[orr] = r2[orr] + unit(nv);
            r2[u] = r2[u] - Bi;
            r2[v] = r2[v] - Bi * A + Bi;
        } else {
            // out_left = A.v ; out_right = B^-1.u
            r1[ol] = r1[ol] + unit(nv);
            r1[v] = r1[v] - A;
            r2[orr] = r2[orr] + unit(nv);
            r2[u] = r2[u] - Bi;
        }
        p.relations.push_back(std::move(r1));
        p.relations.push_back(std::move(r2));
    }
    return p;
}

namespace {

// k x k matrices over Z_m as flat row-major longs.
using Mat = std::vector<long>;

Mat mat_identity(int k) {
    Mat a(size_t(k) * k, 0);
    for (int i = 0; i < k; ++i) a[size_t(i) * k + i] = 1;
    return a;
}

Mat mat_mul(const Mat& a, const Mat& b, int k, long m) {
    Mat c(size_t(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            long x = a[size_t(i) * k + l];
            if (!x) continue;
            for (int j = 0; j < k; ++j)
                c[size_t(i) * k + j] =
                    (c[size_t(i) * k + j] + x * b[size_t(l) * k + j]) % m;
        }
    return c;
}

mpz_class hom_count_range(const LaurentPresentation& p, const CrossedModule& cm,
                          unsigned long long lo, unsigned long long hi,
                          unsigned long long stride) {
    const FiniteGroup& G = cm.group();
    long m = cm.coeffs().m;
    int k = cm.coeffs().k;
    int nv = p.n_vars;
    int order = G.order();
    mpz_class total = 0;
    for (unsigned long long idx = lo; idx < hi; idx += stride) {
        // Decode the assignment: variable i -> group element digit i.
        std::vector<int> g(nv);
        unsigned long long t = idx;
        for (int i = 0; i < nv; ++i) {
            g[i] = int(t % order);
            t /= order;
        }
        // Monomial evaluator with per-variable powers.
        auto eval_term = [&](const std::vector<int>& e) {
            Mat acc = mat_identity(k);
            for (int i = 0; i < nv; ++i) {
                if (e[i] == 0) continue;
                int elem = e[i] > 0 ? g[i] : G.inv(g[i]);
                Mat step(cm.action(elem));
                for (int c = std::abs(e[i]); c > 0; --c) acc = mat_mul(acc, step, k, m);
            }
            return acc;
        };
        IntMatrix a((int)p.relations.size() * k, p.n_generators * k);
        for (size_t r = 0; r < p.relations.size(); ++r)
            for (int c = 0; c < p.n_generators; ++c) {
                const LaurentPoly& q = p.relations[r][c];
                if (q.is_zero()) continue;
                Mat block(size_t(k) * k, 0);
                for (const auto& [e, coef] : q.terms) {
                    Mat t2 = eval_term(e);
                    long cc = (mpz_class((coef % m) + m).get_si()) % m;
                    for (size_t z = 0; z < block.size(); ++z)
                        block[z] = (block[z] + cc * t2[z]) % m;
                }
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        a.at((int)r * k + i, c * k + j) = block[size_t(i) * k + j];
            }
        total += count_solutions_mod(a, {}, m, p.n_generators * k);
    }
    return total;
}

}  // namespace

mpz_class hom_count(const LaurentPresentation& p, const CrossedModule& cm, int workers) {
    const FiniteGroup& G = cm.group();
    if (!G.is_abelian())
        throw std::invalid_argument("hom_count requires an abelian acting group");
    unsigned long long n_assign = 1;
    for (int i = 0; i < p.n_vars; ++i) n_assign *= (unsigned long long)G.order();
    if (workers <= 1 || n_assign < 2)
        return hom_count_range(p, cm, 0, n_assign, 1);
    int w = std::min<unsigned long long>(workers, n_assign);
    std::vector<mpz_class> part(w);
    std::vector<std::thread> th;
    for (int i = 0; i < w; ++i)
        th.emplace_back([&, i] { part[i] = hom_count_range(p, cm, i, n_assign, w); });
    for (auto& t : th) t.join();
    mpz_class total = 0;
    for (auto& x : part) total += x;
    return total;
}

bool mirror_relation_check(const MorseDiagram& d) {
    MorseDiagram md = mirror(d);
    for (long m = 1; m <= 12; ++m) {
        CrossedModule cm = make_sign_module(m);
        if (hom_count(cm_presentation(d), cm) !=
            hom_count(alex_prime_presentation(md), cm))
            return false;
    }
    return true;
}

LaurentPoly alexander_polynomial(const MorseDiagram& d) {
    for (const MorseEvent& e : d.events) {
        if (e.kind == EventKind::Cross && e.sign == CrossSign::Virtual)
            throw std::invalid_argument("alexander_polynomial expects a classical diagram");
        if (e.kind == EventKind::Vertex || e.kind == EventKind::EndUp ||
            e.kind == EventKind::EndDown)
            throw std::invalid_argument("alexander_polynomial expects a closed knot");
    }
    if (component_count(d) != 1)
        throw std::invalid_argument("alexander_polynomial expects one component");

    LaurentPresentation p = alex_presentation(d);
    int g = p.n_generators;
    if (g <= 1) return LaurentPoly::constant(1, 1);
    // Drop generator 0 (sent to zero), then one redundant relation.
    auto minor_det = [&](size_t skip_row) {
        std::vector<std::vector<LaurentPoly>> m;
        for (size_t r = 0; r < p.relations.size(); ++r) {
            if (r == skip_row) continue;
            std::vector<LaurentPoly> row(p.relations[r].begin() + 1,
                                         p.relations[r].end());
            m.push_back(std::move(row));
        }
        return m.size() == (size_t)g - 1 ? det_bareiss(m) : LaurentPoly::zero(1);
    };
    LaurentPoly det = LaurentPoly::zero(1);
    for (size_t skip = p.relations.size(); skip-- > 0 && det.is_zero();)
        det = minor_det(skip);
    if (det.is_zero()) return det;
    // Normalize: lowest exponent 0, positive leading coefficient.
    int low = det.terms.begin()->first[0];
    LaurentPoly shift = LaurentPoly::monomial(1, 0, -low);
    det = det * shift;
    if (det.terms.rbegin()->second < 0) det = -det;
    return det;
}

std::string presentation_text(const LaurentPresentation& p) {
    std::ostringstream os;
    os << "generators " << p.n_generators << " over Z[";
    for (int i = 0; i < p.n_vars; ++i) os << (i ? ",X" : "X") << i + 1 << "^{+-1}";
    os << "]\n";
    for (const auto& r : p.relations) {
        bool first = true;
        for (int c = 0; c < p.n_generators; ++c) {
            if (r[c].is_zero()) continue;
            os << (first ? "" : " + ") << "(" << r[c].str() << ")*e" << c + 1;
            first = false;
        }
        if (first) os << "0";
        os << " = 0\n";
    }
    return os.str();
}

}  // namespace weldinv
