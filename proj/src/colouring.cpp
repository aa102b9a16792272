#include "weldinv/colouring.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>

#include "weldinv/snf.hpp"

namespace weldinv {

namespace {

mpz_class mpz_pow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

long oracle_cap() {
    const char* s = std::getenv("WELDINV_ORACLE_CAP");
    return s ? std::atol(s) : 1000000000L;
}

// Count solutions of the homogeneous system (rows x cols, entries mod m) over
// Z_m by diagonalization; entries stay reduced mod m throughout, which is
// sound because the solution count depends on the matrix mod m only.
mpz_class count_homogeneous(std::vector<long>& a, int nr, int nc, long m) {
    if (nc == 0) return 1;
    for (auto& v : a) v = ((v % m) + m) % m;
    auto at = [&](int r, int c) -> long& { return a[(size_t)r * nc + c]; };
    int t = 0;
    mpz_class result = 1;
    while (t < nr && t < nc) {
        int pr = -1, pc = -1;
        long best = 0;
        for (int i = t; i < nr; ++i)
            for (int j = t; j < nc; ++j) {
                long v = at(i, j);
                if (v != 0 && (pr < 0 || v < best)) { pr = i; pc = j; best = v; }
            }
        if (pr < 0) break;
        for (int j = 0; j < nc; ++j) std::swap(at(t, j), at(pr, j));
        for (int i = 0; i < nr; ++i) std::swap(at(i, t), at(i, pc));
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < nr; ++i) {
                if (at(i, t) == 0) continue;
                long q = at(i, t) / at(t, t);
                for (int j = t; j < nc; ++j)
                    at(i, j) = (at(i, j) - q * at(t, j)) % m;
                if (((at(i, t) % m) + m) % m != 0) {
                    for (int j = t; j < nc; ++j) std::swap(at(t, j), at(i, j));
                    again = true;
                }
                for (int j = t; j < nc; ++j) at(i, j) = ((at(i, j) % m) + m) % m;
                if (again) break;
            }
            if (again) continue;
            for (int j = t + 1; j < nc; ++j) {
                if (at(t, j) == 0) continue;
                long q = at(t, j) / at(t, t);
                for (int i = t; i < nr; ++i)
                    at(i, j) = (at(i, j) - q * at(i, t)) % m;
                if (((at(t, j) % m) + m) % m != 0) {
                    for (int i = t; i < nr; ++i) std::swap(at(i, t), at(i, j));
                    again = true;
                }
                for (int i = t; i < nr; ++i) at(i, j) = ((at(i, j) % m) + m) % m;
                if (again) break;
            }
        }
        result *= std::gcd(at(t, t), m);
        ++t;
    }
    return result * mpz_pow(m, (unsigned long)(nc - t));
}

struct FastCtx {
    const ColouringProblem* p;
    const FiniteGroup* g;
    const std::vector<int>* plan;  // creator events to branch on, in order
    long m;
    int k, ne, cols, n_segs;
    std::vector<int> seg_g;  // -1 = not yet determined
    std::vector<long> expr;  // per segment, k x cols (row-major), leaf workspace
    std::vector<long> rows;  // constraint rows, k entries of `cols` each batch
    std::vector<long> tmp;   // k x cols scratch
    mpz_class total = 0;
    unsigned long long branches = 0;

    long* ex(int s) { return expr.data() + (size_t)s * k * cols; }
    bool assign(int s, int v, bool& changed) {
        if (seg_g[s] < 0) {
            seg_g[s] = v;
            changed = true;
            return true;
        }
        return seg_g[s] == v;
    }
    bool propagate();
    void leaf(const mpz_class& mult);
    void dfs(int level, const mpz_class& mult);
};

// Fixpoint constraint propagation over the event relations.  Every relation
// is invertible segment-wise, so values flow both up and down the diagram;
// deaths and vertices back-solve unknowns instead of merely checking them.
bool FastCtx::propagate() {
    const auto& evs = p->diagram.events;
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < evs.size(); ++i) {
            const MorseEvent& e = evs[i];
            const auto& ins = p->sweep.in_segs[i];
            const auto& outs = p->sweep.out_segs[i];
            switch (e.kind) {
                case EventKind::Birth: {
                    int a = outs[0], b = outs[1];
                    if (seg_g[a] >= 0 && !assign(b, seg_g[a], changed)) return false;
                    if (seg_g[b] >= 0 && !assign(a, seg_g[b], changed)) return false;
                    break;
                }
                case EventKind::Death: {
                    int a = ins[0], b = ins[1];
                    if (seg_g[a] >= 0 && !assign(b, seg_g[a], changed)) return false;
                    if (seg_g[b] >= 0 && !assign(a, seg_g[b], changed)) return false;
                    break;
                }
                case EventKind::Vertex: {
                    int v = -1;
                    for (int s : ins)
                        if (seg_g[s] >= 0) { v = seg_g[s]; break; }
                    if (v < 0)
                        for (int s : outs)
                            if (seg_g[s] >= 0) { v = seg_g[s]; break; }
                    if (v < 0) break;
                    for (int s : ins)
                        if (!assign(s, v, changed)) return false;
                    for (int s : outs)
                        if (!assign(s, v, changed)) return false;
                    break;
                }
                case EventKind::Cross: {
                    int il = ins[0], ir = ins[1], ol = outs[0], orr = outs[1];
                    if (e.sign == CrossSign::Virtual) {
                        if (seg_g[ir] >= 0 && !assign(ol, seg_g[ir], changed)) return false;
                        if (seg_g[ol] >= 0 && !assign(ir, seg_g[ol], changed)) return false;
                        if (seg_g[il] >= 0 && !assign(orr, seg_g[il], changed)) return false;
                        if (seg_g[orr] >= 0 && !assign(il, seg_g[orr], changed)) return false;
                        break;
                    }
                    if (e.sign == CrossSign::Positive) {
                        // over strand: out_right = in_left
                        if (seg_g[il] >= 0 && !assign(orr, seg_g[il], changed)) return false;
                        if (seg_g[orr] >= 0 && !assign(il, seg_g[orr], changed)) return false;
                        if (seg_g[il] >= 0) {
                            int x = seg_g[il], xi = g->inv(x);
                            if (seg_g[ir] >= 0 &&
                                !assign(ol, g->conj(xi, seg_g[ir]), changed)) return false;
                            if (seg_g[ol] >= 0 &&
                                !assign(ir, g->conj(x, seg_g[ol]), changed)) return false;
                        }
                    } else {
                        // over strand: out_left = in_right
                        if (seg_g[ir] >= 0 && !assign(ol, seg_g[ir], changed)) return false;
                        if (seg_g[ol] >= 0 && !assign(ir, seg_g[ol], changed)) return false;
                        if (seg_g[ir] >= 0) {
                            int y = seg_g[ir], yi = g->inv(y);
                            if (seg_g[il] >= 0 &&
                                !assign(orr, g->conj(y, seg_g[il]), changed)) return false;
                            if (seg_g[orr] >= 0 &&
                                !assign(il, g->conj(yi, seg_g[orr]), changed)) return false;
                        }
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }
    return true;
}

void FastCtx::dfs(int level, const mpz_class& mult) {
    if (!propagate()) return;
    if (level >= (int)plan->size()) {
        leaf(mult);
        return;
    }
    int ev = (*plan)[level];
    if (seg_g[p->sweep.out_segs[ev][0]] >= 0) {  // solved by propagation already
        dfs(level + 1, mult);
        return;
    }
    std::vector<int> saved = seg_g;
    for (int x = 0; x < g->order(); ++x) {
        seg_g = saved;
        for (int s : p->sweep.out_segs[ev]) seg_g[s] = x;
        ++branches;
        dfs(level + 1, mult);
    }
}

void FastCtx::leaf(const mpz_class& mult) {
    if (k == 0 || m == 1 || ne == 0) {
        total += mult;
        return;
    }
    const auto& evs = p->diagram.events;
    rows.clear();
    int eu = 0;
    auto zero_ex = [&](int s) { std::fill(ex(s), ex(s) + (size_t)k * cols, 0L); };
    auto unit_ex = [&](int s, int u, long sign) {
        zero_ex(s);
        for (int r = 0; r < k; ++r) ex(s)[(size_t)r * cols + u * k + r] = ((sign % m) + m) % m;
    };
    auto add_rows = [&](const long* src) {
        rows.insert(rows.end(), src, src + (size_t)k * cols);
    };
    auto act_into = [&](int x, const long* in, long* out) {
        const auto& mat = p->cm.action(x);  // k x k row-major
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < cols; ++c) {
                long acc = 0;
                for (int t = 0; t < k; ++t) acc += mat[(size_t)r * k + t] * in[(size_t)t * cols + c] % m;
                out[(size_t)r * cols + c] = acc % m;
            }
    };
    for (size_t i = 0; i < evs.size(); ++i) {
        const MorseEvent& e = evs[i];
        const auto& ins = p->sweep.in_segs[i];
        const auto& outs = p->sweep.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth:
                unit_ex(outs[0], eu, 1);
                unit_ex(outs[1], eu, -1);
                ++eu;
                break;
            case EventKind::EndDown:
                zero_ex(outs[0]);
                break;
            case EventKind::EndUp:
                add_rows(ex(ins[0]));
                break;
            case EventKind::Death: {
                size_t base = rows.size();
                add_rows(ex(ins[0]));
                const long* b = ex(ins[1]);
                for (size_t t = 0; t < (size_t)k * cols; ++t)
                    rows[base + t] = (rows[base + t] + b[t]) % m;
                break;
            }
            case EventKind::Cross: {
                int x = seg_g[ins[0]], y = seg_g[ins[1]];
                const long* el = ex(ins[0]);
                const long* er = ex(ins[1]);
                long* ol = ex(outs[0]);
                long* orr = ex(outs[1]);
                if (e.sign == CrossSign::Virtual) {
                    std::copy(er, er + (size_t)k * cols, ol);
                    std::copy(el, el + (size_t)k * cols, orr);
                } else if (e.sign == CrossSign::Positive) {
                    act_into(g->inv(x), er, tmp.data());
                    for (size_t t = 0; t < (size_t)k * cols; ++t) {
                        long v = tmp[t];
                        orr[t] = ((el[t] + er[t] - v) % m + m) % m;
                        ol[t] = v;
                    }
                } else {
                    act_into(y, el, tmp.data());
                    for (size_t t = 0; t < (size_t)k * cols; ++t) {
                        long v = tmp[t];
                        ol[t] = ((el[t] + er[t] - v) % m + m) % m;
                        orr[t] = v;
                    }
                }
                break;
            }
            case EventKind::Vertex: {
                std::fill(tmp.begin(), tmp.begin() + (size_t)k * cols, 0L);
                for (int s : ins)
                    for (size_t t = 0; t < (size_t)k * cols; ++t)
                        tmp[t] = (tmp[t] + ex(s)[t]) % m;
                if (e.above == 0) {
                    add_rows(tmp.data());
                    break;
                }
                for (int j = 0; j + 1 < e.above; ++j) {
                    unit_ex(outs[j], eu, 1);
                    for (int r = 0; r < k; ++r)
                        tmp[(size_t)r * cols + eu * k + r] =
                            ((tmp[(size_t)r * cols + eu * k + r] - 1) % m + m) % m;
                    ++eu;
                }
                std::copy(tmp.begin(), tmp.begin() + (size_t)k * cols, ex(outs[e.above - 1]));
                break;
            }
        }
    }
    total += mult * count_homogeneous(rows, (int)(rows.size() / cols), cols, m);
}

// Which segments propagate() can determine depends only on which segments are
// already bound, never on their values.  Simulating that closure with booleans
// lets us pick, up front, a smallest set of creator events to branch on; the
// rest back-solve for free.
bool closes_all(const ColouringProblem& p, std::vector<char>& b) {
    const auto& evs = p.diagram.events;
    bool changed = true;
    while (changed) {
        changed = false;
        auto mark = [&](int s) {
            if (!b[s]) {
                b[s] = 1;
                changed = true;
            }
        };
        for (size_t i = 0; i < evs.size(); ++i) {
            const MorseEvent& e = evs[i];
            const auto& ins = p.sweep.in_segs[i];
            const auto& outs = p.sweep.out_segs[i];
            switch (e.kind) {
                case EventKind::Birth:
                    if (b[outs[0]] || b[outs[1]]) {
                        mark(outs[0]);
                        mark(outs[1]);
                    }
                    break;
                case EventKind::Death:
                    if (b[ins[0]] || b[ins[1]]) {
                        mark(ins[0]);
                        mark(ins[1]);
                    }
                    break;
                case EventKind::Vertex: {
                    bool any = false;
                    for (int s : ins) any = any || b[s];
                    for (int s : outs) any = any || b[s];
                    if (any) {
                        for (int s : ins) mark(s);
                        for (int s : outs) mark(s);
                    }
                    break;
                }
                case EventKind::Cross: {
                    int il = ins[0], ir = ins[1], ol = outs[0], orr = outs[1];
                    if (e.sign == CrossSign::Virtual) {
                        if (b[ir] || b[ol]) {
                            mark(ir);
                            mark(ol);
                        }
                        if (b[il] || b[orr]) {
                            mark(il);
                            mark(orr);
                        }
                    } else if (e.sign == CrossSign::Positive) {
                        if (b[il] || b[orr]) {
                            mark(il);
                            mark(orr);
                        }
                        if (b[il] && (b[ir] || b[ol])) {
                            mark(ir);
                            mark(ol);
                        }
                    } else {
                        if (b[ir] || b[ol]) {
                            mark(ir);
                            mark(ol);
                        }
                        if (b[ir] && (b[il] || b[orr])) {
                            mark(il);
                            mark(orr);
                        }
                    }
                    break;
                }
                default:
                    break;
            }
        }
    }
    for (char x : b)
        if (!x) return false;
    return true;
}

std::vector<int> branch_plan(const ColouringProblem& p) {
    const auto& creators = p.g_unknown_event;
    int n = (int)creators.size(), n_segs = p.sweep.n_segments;
    if (n == 0 || n_segs == 0) return {};

    auto try_set = [&](const std::vector<int>& events) {
        std::vector<char> b(n_segs, 0);
        for (int ev : events)
            for (int s : p.sweep.out_segs[ev]) b[s] = 1;
        return closes_all(p, b);
    };

    // Exact search over subsets of increasing size, within a budget.
    long budget = 100000;
    std::vector<int> combo;
    for (int d = 1; d <= n && budget > 0; ++d) {
        std::vector<int> idx(d);
        std::iota(idx.begin(), idx.end(), 0);
        while (budget-- > 0) {
            combo.clear();
            for (int i : idx) combo.push_back(creators[i]);
            if (try_set(combo)) return combo;
            int i = d - 1;
            while (i >= 0 && idx[i] == n - d + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    // Greedy fallback: repeatedly add the creator whose binding closes the most.
    std::vector<int> plan;
    std::vector<char> bound(n_segs, 0);
    while (true) {
        {
            std::vector<char> b = bound;
            if (closes_all(p, b)) return plan;
            bound = b;
        }
        int best = -1, best_gain = -1;
        for (int ev : creators) {
            if (bound[p.sweep.out_segs[ev][0]]) continue;
            std::vector<char> b = bound;
            for (int s : p.sweep.out_segs[ev]) b[s] = 1;
            closes_all(p, b);
            int gain = 0;
            for (int s = 0; s < n_segs; ++s) gain += b[s] - bound[s];
            if (gain > best_gain) {
                best_gain = gain;
                best = ev;
            }
        }
        plan.push_back(best);
        for (int s : p.sweep.out_segs[best]) bound[s] = 1;
    }
}

FastCtx make_ctx(const ColouringProblem& p) {
    FastCtx c;
    c.p = &p;
    c.g = &p.cm.group();
    c.m = p.cm.coeffs().m;
    c.k = p.cm.coeffs().k;
    c.ne = p.n_e_unknowns;
    c.cols = c.k * c.ne;
    c.n_segs = p.sweep.n_segments;
    c.seg_g.assign(c.n_segs, -1);
    c.expr.assign((size_t)c.n_segs * c.k * c.cols, 0);
    c.tmp.assign((size_t)std::max(1, c.k * c.cols), 0);
    return c;
}

}  // namespace

ColouringProblem build_problem(const MorseDiagram& d, const CrossedModule& cm) {
    ColouringProblem p{d, sweep_segments(d, true), cm, {}, {}, 0, 0};
    for (size_t i = 0; i < d.events.size(); ++i) {
        const MorseEvent& e = d.events[i];
        bool creator = e.kind == EventKind::Birth || e.kind == EventKind::EndDown ||
                       (e.kind == EventKind::Vertex && e.below == 0);
        p.event_g_unknown.push_back(creator ? p.n_g_unknowns : -1);
        if (creator) {
            p.g_unknown_event.push_back((int)i);
            ++p.n_g_unknowns;
        }
        if (e.kind == EventKind::Birth) ++p.n_e_unknowns;
        if (e.kind == EventKind::Vertex && e.above > 0) p.n_e_unknowns += e.above - 1;
    }
    return p;
}

mpz_class count_fast(const ColouringProblem& p, const CountOptions& opts,
                     unsigned long long* g_branches) {
    if (g_branches) *g_branches = 0;
    if (p.diagram.events.empty()) return 1;

    std::vector<int> plan = branch_plan(p);
    if (plan.empty()) {
        FastCtx c = make_ctx(p);
        c.plan = &plan;
        c.dfs(0, 1);
        if (g_branches) *g_branches = c.branches;
        return c.total;
    }

    std::vector<std::pair<int, long>> top;  // first unknown: (value, multiplicity)
    if (opts.conjugacy_reduction) {
        for (auto& [rep, size] : p.cm.group().conjugacy_classes()) top.push_back({rep, size});
    } else {
        for (int x = 0; x < p.cm.group().order(); ++x) top.push_back({x, 1});
    }

    int workers = std::max(1, opts.workers);
    workers = std::min<int>(workers, (int)top.size());
    std::vector<mpz_class> sums(workers);
    std::vector<unsigned long long> branch_counts(workers, 0);

    auto work = [&](int w) {
        FastCtx c = make_ctx(p);
        c.plan = &plan;
        const auto& outs0 = p.sweep.out_segs[plan[0]];
        for (size_t idx = w; idx < top.size(); idx += workers) {
            auto [x, mul] = top[idx];
            std::fill(c.seg_g.begin(), c.seg_g.end(), -1);
            for (int s : outs0) c.seg_g[s] = x;
            ++c.branches;
            c.dfs(1, mpz_class(mul));
        }
        sums[w] = c.total;
        branch_counts[w] = c.branches;
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    mpz_class total = 0;
    unsigned long long branches = 0;
    for (int w = 0; w < workers; ++w) {
        total += sums[w];
        branches += branch_counts[w];
    }
    if (g_branches) *g_branches = branches;
    return total;
}

namespace {

// Naive E arithmetic on encoded indices (k digits base m, little-endian).
struct NaiveE {
    long m;
    int k;
    long size;
    std::vector<long> digits_a, digits_b, digits_c;

    void decode(long idx, std::vector<long>& d) const {
        for (int i = 0; i < k; ++i) {
            d[i] = idx % m;
            idx /= m;
        }
    }
    long encode(const std::vector<long>& d) const {
        long idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * m + d[i];
        return idx;
    }
    long add(long a, long b) {
        if (k == 0) return 0;
        decode(a, digits_a);
        decode(b, digits_b);
        for (int i = 0; i < k; ++i) digits_a[i] = (digits_a[i] + digits_b[i]) % m;
        return encode(digits_a);
    }
    long neg(long a) {
        if (k == 0) return 0;
        decode(a, digits_a);
        for (int i = 0; i < k; ++i) digits_a[i] = (m - digits_a[i]) % m;
        return encode(digits_a);
    }
    long act(const CrossedModule& cm, int g, long a) {
        if (k == 0) return 0;
        decode(a, digits_a);
        cm.act(g, digits_a.data(), digits_c.data());
        return encode(digits_c);
    }
};

}  // namespace

mpz_class count_naive(const ColouringProblem& p) {
    const FiniteGroup& gr = p.cm.group();
    long m = p.cm.coeffs().m;
    int k = p.cm.coeffs().k;
    mpz_class esize = p.cm.coeffs().size();
    mpz_class gsize = gr.order();

    mpz_class estimate = 1;
    for (const MorseEvent& e : p.diagram.events) {
        if (e.kind == EventKind::Birth) estimate *= gsize * esize;
        else if (e.kind == EventKind::EndDown) estimate *= gsize;
        else if (e.kind == EventKind::Vertex) {
            if (e.below == 0) estimate *= gsize;
            if (e.above > 1) estimate *= mpz_pow(esize, e.above - 1);
        }
    }
    if (estimate > oracle_cap())
        throw OracleCapExceeded("naive oracle estimate " + estimate.get_str() +
                                " exceeds cap " + std::to_string(oracle_cap()));

    int n_segs = p.sweep.n_segments;
    long esz = esize.get_si();
    NaiveE ee{m, k, esz};
    ee.digits_a.assign(std::max(1, k), 0);
    ee.digits_b.assign(std::max(1, k), 0);
    ee.digits_c.assign(std::max(1, k), 0);

    // Events become checkable once their newest incident segment is labelled.
    std::vector<std::vector<int>> checks(std::max(1, n_segs));
    for (size_t i = 0; i < p.diagram.events.size(); ++i) {
        int mx = -1;
        for (int s : p.sweep.in_segs[i]) mx = std::max(mx, s);
        for (int s : p.sweep.out_segs[i]) mx = std::max(mx, s);
        if (mx >= 0) checks[mx].push_back((int)i);
    }

    std::vector<int> sg(n_segs, 0);
    std::vector<long> se(n_segs, 0);

    auto check_event = [&](int i) -> bool {
        const MorseEvent& e = p.diagram.events[i];
        const auto& ins = p.sweep.in_segs[i];
        const auto& outs = p.sweep.out_segs[i];
        switch (e.kind) {
            case EventKind::Birth:
                return sg[outs[0]] == sg[outs[1]] && ee.add(se[outs[0]], se[outs[1]]) == 0;
            case EventKind::Death:
                return sg[ins[0]] == sg[ins[1]] && ee.add(se[ins[0]], se[ins[1]]) == 0;
            case EventKind::EndUp:
                return se[ins[0]] == 0;
            case EventKind::EndDown:
                return se[outs[0]] == 0;
            case EventKind::Vertex: {
                int g0 = ins.empty() ? sg[outs[0]] : sg[ins[0]];
                for (int s : ins)
                    if (sg[s] != g0) return false;
                for (int s : outs)
                    if (sg[s] != g0) return false;
                long below = 0, above = 0;
                for (int s : ins) below = ee.add(below, se[s]);
                for (int s : outs) above = ee.add(above, se[s]);
                return below == above;
            }
            case EventKind::Cross: {
                int x = sg[ins[0]], y = sg[ins[1]];
                long e0 = se[ins[0]], f0 = se[ins[1]];
                if (e.sign == CrossSign::Virtual)
                    return sg[outs[0]] == y && sg[outs[1]] == x && se[outs[0]] == f0 &&
                           se[outs[1]] == e0;
                if (e.sign == CrossSign::Positive) {
                    long lf = ee.act(p.cm, gr.inv(x), f0);
                    return sg[outs[0]] == gr.conj(gr.inv(x), y) && sg[outs[1]] == x &&
                           se[outs[0]] == lf &&
                           se[outs[1]] == ee.add(ee.add(e0, f0), ee.neg(lf));
                }
                long re = ee.act(p.cm, y, e0);
                return sg[outs[0]] == y && sg[outs[1]] == gr.conj(y, x) &&
                       se[outs[1]] == re &&
                       se[outs[0]] == ee.add(ee.add(e0, f0), ee.neg(re));
            }
        }
        return false;
    };

    mpz_class count = 0;
    std::function<void(int)> go = [&](int s) {
        if (s == n_segs) {
            ++count;
            return;
        }
        for (int gv = 0; gv < gr.order(); ++gv) {
            sg[s] = gv;
            for (long ev = 0; ev < esz; ++ev) {
                se[s] = ev;
                bool ok = true;
                for (int ei : checks[s])
                    if (!check_event(ei)) { ok = false; break; }
                if (ok) go(s + 1);
            }
        }
    };
    if (n_segs == 0) return 1;
    go(0);
    return count;
}

mpz_class InvariantValue::as_integer() const {
    if (!is_integer()) throw std::logic_error("invariant value is not an integer");
    return v.get_num();
}

std::string InvariantValue::str() const {
    if (is_integer()) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

CountReport invariant(const MorseDiagram& d, const CrossedModule& cm,
                      const CountOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CountReport r;
    MorseDiagram canon = canonicalize(d);
    ColouringProblem p = build_problem(canon, cm);
    if (opts.naive) {
        r.raw_count = count_naive(p);
        r.backend = "naive";
    } else {
        r.raw_count = count_fast(p, opts, &r.g_branches);
        r.backend = "fast";
    }
    for (const MorseEvent& e : canon.events) {
        switch (e.kind) {
            case EventKind::Birth: ++r.cups; break;
            case EventKind::Death: ++r.caps; break;
            case EventKind::EndUp: ++r.up_ends; break;
            case EventKind::EndDown: ++r.down_ends; break;
            case EventKind::Vertex: r.vertex_above.push_back(e.above); break;
            default: break;
        }
    }
    r.exponent = r.caps - r.cups + r.up_ends;
    for (int a : r.vertex_above) r.exponent += 1 - a;
    mpz_class esize = cm.coeffs().size();
    mpq_class val(r.raw_count);
    if (r.exponent >= 0)
        val *= mpz_pow(esize, (unsigned long)r.exponent);
    else
        val /= mpz_pow(esize, (unsigned long)(-r.exponent));
    val.canonicalize();
    r.value = InvariantValue{val};
    r.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

mpz_class counting_invariant(const MorseDiagram& d, GroupPtr g) {
    return invariant(d, make_trivial_E(std::move(g))).raw_count;
}

}  // namespace weldinv
