#include "weldinv/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace weldinv {

FiniteGroup::FiniteGroup(int order, std::vector<int> mul_table, std::vector<std::string> labels)
    : order_(order), mul_(std::move(mul_table)), labels_(std::move(labels)) {
    if (order_ <= 0 || mul_.size() != size_t(order_) * order_)
        throw std::invalid_argument("bad multiplication table size");
    for (int x : mul_)
        if (x < 0 || x >= order_) throw std::invalid_argument("table entry out of range");
    // Identity: the unique e with e*j = j for all j.
    for (int i = 0; i < order_ && identity_ < 0; ++i) {
        bool ok = true;
        for (int j = 0; j < order_ && ok; ++j) ok = mul(i, j) == j && mul(j, i) == j;
        if (ok) identity_ = i;
    }
    if (identity_ < 0) throw std::invalid_argument("no identity element");
    inv_.assign(order_, -1);
    for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j)
            if (mul(i, j) == identity_) { inv_[i] = j; break; }
    for (int i = 0; i < order_; ++i)
        if (inv_[i] < 0 || mul(inv_[i], i) != identity_)
            throw std::invalid_argument("element without two-sided inverse");
    abelian_ = true;
    for (int i = 0; i < order_ && abelian_; ++i)
        for (int j = i + 1; j < order_ && abelian_; ++j)
            if (mul(i, j) != mul(j, i)) abelian_ = false;
    if (labels_.empty()) {
        labels_.resize(order_);
        for (int i = 0; i < order_; ++i) labels_[i] = std::to_string(i);
    }
    if (labels_.size() != size_t(order_)) throw std::invalid_argument("bad label count");
}

const std::vector<std::pair<int, int>>& FiniteGroup::conjugacy_classes() const {
    if (!classes_.empty() || order_ == 0) return classes_;
    class_of_.assign(order_, -1);
    for (int x = 0; x < order_; ++x) {
        if (class_of_[x] >= 0) continue;
        int id = (int)classes_.size();
        int size = 0;
        for (int g = 0; g < order_; ++g) {
            int y = conj(g, x);
            if (class_of_[y] < 0) { class_of_[y] = id; ++size; }
        }
        classes_.emplace_back(x, size);
    }
    return classes_;
}

const std::vector<int>& FiniteGroup::class_of() const {
    conjugacy_classes();
    return class_of_;
}

std::vector<std::string> FiniteGroup::check_axioms(int random_samples) const {
    std::vector<std::string> bad;
    auto assoc = [&](int a, int b, int c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            bad.push_back("associativity fails at (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
    };
    if (order_ <= 64) {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c) assoc(a, b, c);
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<int> d(0, order_ - 1);
        for (int t = 0; t < random_samples; ++t) assoc(d(rng), d(rng), d(rng));
    }
    auto& cls = conjugacy_classes();
    long total = 0;
    for (auto& [rep, sz] : cls) total += sz;
    if (total != order_) bad.push_back("conjugacy class sizes do not sum to the order");
    return bad;
}

CrossedModule::CrossedModule(GroupPtr g, AbelianGroup e, std::vector<std::vector<long>> action,
                             std::string name)
    : g_(std::move(g)), e_(e), action_(std::move(action)), name_(std::move(name)) {
    if (!g_) throw std::invalid_argument("null group");
    if (action_.size() != size_t(g_->order())) throw std::invalid_argument("bad action size");
    size_t kk = size_t(e_.k) * e_.k;
    for (auto& m : action_) {
        if (m.size() != kk) throw std::invalid_argument("bad action matrix size");
        for (auto& x : m) {
            x %= e_.m;
            if (x < 0) x += e_.m;
        }
    }
}

void CrossedModule::act(int g, const long* in, long* out) const {
    const auto& m = action_[g];
    int k = e_.k;
    for (int i = 0; i < k; ++i) {
        long s = 0;
        for (int j = 0; j < k; ++j) s += m[size_t(i) * k + j] * in[j];
        out[i] = s % e_.m;
        if (out[i] < 0) out[i] += e_.m;
    }
}

namespace {

std::vector<long> mat_mul_mod(const std::vector<long>& a, const std::vector<long>& b, int k, long m) {
    std::vector<long> r(size_t(k) * k, 0);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            long x = a[size_t(i) * k + l];
            if (!x) continue;
            for (int j = 0; j < k; ++j)
                r[size_t(i) * k + j] = (r[size_t(i) * k + j] + x * b[size_t(l) * k + j]) % m;
        }
    return r;
}

mpz_class det_mod(const std::vector<long>& mat, int k, long m) {
    // Integer determinant by cofactor expansion (k is tiny), reduced mod m.
    std::vector<mpz_class> a(mat.begin(), mat.end());
    std::function<mpz_class(std::vector<int>&, int)> go = [&](std::vector<int>& cols, int row) -> mpz_class {
        if (row == k) return 1;
        mpz_class s = 0;
        for (size_t t = 0; t < cols.size(); ++t) {
            int c = cols[t];
            if (a[size_t(row) * k + c] == 0) continue;
            std::vector<int> rest;
            for (size_t u = 0; u < cols.size(); ++u)
                if (u != t) rest.push_back(cols[u]);
            mpz_class term = a[size_t(row) * k + c] * go(rest, row + 1);
            if (t % 2) s -= term; else s += term;
        }
        return s;
    };
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    mpz_class d = go(cols, 0) % m;
    if (d < 0) d += m;
    return d;
}

bool invertible_mod(const std::vector<long>& mat, int k, long m) {
    if (k == 0) return true;
    mpz_class d = det_mod(mat, k, m);
    mpz_class g;
    mpz_class mm(m);
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), mm.get_mpz_t());
    return g == 1;
}

}  // namespace

std::vector<std::string> CrossedModule::check_axioms(int random_samples) const {
    std::vector<std::string> bad;
    int n = g_->order();
    int k = e_.k;
    long m = e_.m;
    // identity acts as identity
    const auto& ide = action_[g_->identity()];
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            long want = (i == j) ? 1 % m : 0;
            if (ide[size_t(i) * k + j] != want) {
                bad.push_back("identity does not act trivially");
                i = j = k;
            }
        }
    for (int g = 0; g < n; ++g)
        if (!invertible_mod(action_[g], k, m))
            bad.push_back("action of element " + std::to_string(g) + " is not invertible");
    auto check_pair = [&](int g, int h) {
        auto lhs = action_[g_->mul(g, h)];
        auto rhs = mat_mul_mod(action_[g], action_[h], k, m);
        if (lhs != rhs)
            bad.push_back("action is not a homomorphism at (" + std::to_string(g) + "," +
                          std::to_string(h) + ")");
    };
    if (n <= 48) {
        for (int g = 0; g < n; ++g)
            for (int h = 0; h < n; ++h) check_pair(g, h);
    } else {
        std::mt19937_64 rng(999);
        std::uniform_int_distribution<int> d(0, n - 1);
        for (int t = 0; t < random_samples; ++t) check_pair(d(rng), d(rng));
    }
    return bad;
}

GroupPtr make_gl_group(int n, long p, int max_order) {
    if (n < 1 || p < 2) throw std::invalid_argument("gl(n,p) needs n >= 1, p >= 2");
    size_t cells = size_t(n) * n;
    double total = std::pow((double)p, (double)cells);
    if (total > 2e8) throw std::invalid_argument("gl(n,p) enumeration too large");
    // Enumerate matrices with unit determinant mod p.
    std::vector<std::vector<long>> elems;
    std::vector<long> mat(cells, 0);
    size_t count = size_t(std::llround(total));
    for (size_t code = 0; code < count; ++code) {
        size_t c = code;
        for (size_t i = 0; i < cells; ++i) { mat[i] = long(c % p); c /= p; }
        if (invertible_mod(mat, n, p)) {
            elems.push_back(mat);
            if ((int)elems.size() > max_order)
                throw std::invalid_argument("gl(n,p) exceeds the group-size cap");
        }
    }
    // Index map for products.
    auto key = [&](const std::vector<long>& mm) {
        size_t c = 0;
        for (size_t i = cells; i-- > 0;) c = c * p + size_t(mm[i]);
        return c;
    };
    std::vector<int> index(count, -1);
    for (size_t i = 0; i < elems.size(); ++i) index[key(elems[i])] = (int)i;
    int order = (int)elems.size();
    std::vector<int> table(size_t(order) * order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            table[size_t(i) * order + j] = index[key(mat_mul_mod(elems[i], elems[j], n, p))];
    std::vector<std::string> labels(order);
    for (int i = 0; i < order; ++i) {
        std::string s = "[";
        for (size_t t = 0; t < cells; ++t) {
            if (t) s += t % n == 0 ? ";" : ",";
            s += std::to_string(elems[i][t]);
        }
        labels[i] = s + "]";
    }
    return std::make_shared<FiniteGroup>(order, std::move(table), std::move(labels));
}

CrossedModule make_gl_module(int n, long p, int max_order) {
    GroupPtr g = make_gl_group(n, p, max_order);
    // action(g) = the matrix itself; recover entries from the label-free
    // enumeration by re-listing in the same order.
    size_t cells = size_t(n) * n;
    std::vector<std::vector<long>> action(g->order());
    for (int i = 0; i < g->order(); ++i) {
        // labels have the form [a,b;c,d]
        std::vector<long> mat;
        const std::string& s = g->label(i);
        long v = 0;
        bool in_num = false;
        for (char ch : s) {
            if (ch >= '0' && ch <= '9') { v = v * 10 + (ch - '0'); in_num = true; }
            else if (in_num) { mat.push_back(v); v = 0; in_num = false; }
        }
        if (mat.size() != cells) throw std::logic_error("bad gl label");
        action[i] = std::move(mat);
    }
    return CrossedModule(g, AbelianGroup{p, n}, std::move(action),
                         "gl(" + std::to_string(n) + "," + std::to_string(p) + ")");
}

CrossedModule make_sign_module(long m) {
    if (m < 1) throw std::invalid_argument("sign(m) needs m >= 1");
    std::vector<int> table = {0, 1, 1, 0};  // Z_2
    auto g = std::make_shared<FiniteGroup>(2, table, std::vector<std::string>{"1", "-1"});
    std::vector<std::vector<long>> action(2);
    action[0] = {1 % m};
    action[1] = {(m - 1) % m};  // negation
    return CrossedModule(g, AbelianGroup{m, 1}, std::move(action),
                         "sign(" + std::to_string(m) + ")");
}

CrossedModule make_trivial_E(GroupPtr g) {
    std::vector<std::vector<long>> action(g->order());  // 0x0 matrices
    return CrossedModule(std::move(g), AbelianGroup{1, 0}, std::move(action), "trivial");
}

GroupPtr make_cyclic_group(int n) {
    std::vector<int> table(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) table[size_t(i) * n + j] = (i + j) % n;
    return std::make_shared<FiniteGroup>(n, std::move(table));
}

GroupPtr make_symmetric_group(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));
    int order = (int)perms.size();
    auto key = [&](const std::vector<int>& q) {
        size_t c = 0;
        for (int x : q) c = c * n + x;
        return c;
    };
    std::vector<int> index(size_t(std::pow(n, n)) + 1, -1);
    for (int i = 0; i < order; ++i) index[key(perms[i])] = i;
    std::vector<int> table(size_t(order) * order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
            std::vector<int> q(n);
            for (int t = 0; t < n; ++t) q[t] = perms[i][perms[j][t]];
            table[size_t(i) * order + j] = index[key(q)];
        }
    std::vector<std::string> labels(order);
    for (int i = 0; i < order; ++i) {
        std::string s;
        for (int x : perms[i]) s += std::to_string(x);
        labels[i] = s;
    }
    return std::make_shared<FiniteGroup>(order, std::move(table), std::move(labels));
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
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

struct TableFile {
    int order = -1;
    std::vector<std::vector<int>> mul_rows;
    std::vector<std::pair<int, std::string>> labels;
    long m = -1;
    int k = -1;
    std::vector<std::pair<int, std::vector<long>>> actions;
};

TableFile parse_table_text(const std::string& text) {
    TableFile f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = tokenize_line(line);
        if (tok.empty()) continue;
        auto want = [&](size_t n) {
            if (tok.size() != n)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                            std::to_string(n - 1) + " arguments after " + tok[0]);
        };
        try {
            if (tok[0] == "group") {
                want(2);
                f.order = std::stoi(tok[1]);
            } else if (tok[0] == "mul") {
                std::vector<int> row;
                for (size_t i = 1; i < tok.size(); ++i) row.push_back(std::stoi(tok[i]));
                f.mul_rows.push_back(std::move(row));
            } else if (tok[0] == "label") {
                if (tok.size() < 3) throw std::invalid_argument("label needs index and text");
                f.labels.emplace_back(std::stoi(tok[1]), tok[2]);
            } else if (tok[0] == "abelian") {
                want(3);
                f.m = std::stol(tok[1]);
                f.k = std::stoi(tok[2]);
            } else if (tok[0] == "action") {
                std::vector<long> row;
                for (size_t i = 2; i < tok.size(); ++i) row.push_back(std::stol(tok[i]));
                f.actions.emplace_back(std::stoi(tok[1]), std::move(row));
            } else {
                throw std::invalid_argument("unknown directive '" + tok[0] + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad number");
        }
    }
    if (f.order <= 0) throw std::invalid_argument("missing 'group <order>' directive");
    if ((int)f.mul_rows.size() != f.order)
        throw std::invalid_argument("expected " + std::to_string(f.order) + " mul rows");
    for (auto& r : f.mul_rows)
        if ((int)r.size() != f.order) throw std::invalid_argument("mul row of wrong length");
    return f;
}

GroupPtr group_from_table(const TableFile& f) {
    std::vector<int> table;
    for (auto& r : f.mul_rows) table.insert(table.end(), r.begin(), r.end());
    std::vector<std::string> labels;
    if (!f.labels.empty()) {
        labels.resize(f.order);
        for (int i = 0; i < f.order; ++i) labels[i] = std::to_string(i);
        for (auto& [i, s] : f.labels) {
            if (i < 0 || i >= f.order) throw std::invalid_argument("label index out of range");
            labels[i] = s;
        }
    }
    auto g = std::make_shared<FiniteGroup>(f.order, std::move(table), std::move(labels));
    auto bad = g->check_axioms();
    if (!bad.empty()) throw std::invalid_argument("not a group: " + bad.front());
    return g;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

GroupPtr parse_group_table(const std::string& text) {
    return group_from_table(parse_table_text(text));
}

CrossedModule parse_crossed_module_table(const std::string& text) {
    TableFile f = parse_table_text(text);
    GroupPtr g = group_from_table(f);
    if (f.m < 1 || f.k < 0) throw std::invalid_argument("missing 'abelian <m> <k>' directive");
    std::vector<std::vector<long>> action(f.order);
    std::vector<bool> seen(f.order, false);
    for (auto& [i, row] : f.actions) {
        if (i < 0 || i >= f.order) throw std::invalid_argument("action index out of range");
        if ((int)row.size() != f.k * f.k)
            throw std::invalid_argument("action matrix needs k*k entries");
        action[i] = row;
        seen[i] = true;
    }
    for (int i = 0; i < f.order; ++i)
        if (!seen[i]) throw std::invalid_argument("missing action for element " + std::to_string(i));
    CrossedModule cm(g, AbelianGroup{f.m, f.k}, std::move(action), "table");
    auto bad = cm.check_axioms();
    if (!bad.empty()) throw std::invalid_argument("not a crossed module: " + bad.front());
    return cm;
}

CrossedModule parse_cm_spec(const std::string& spec) {
    auto open = spec.find('(');
    auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw std::invalid_argument("bad crossed-module spec: " + spec);
    std::string head = spec.substr(0, open);
    std::string args = spec.substr(open + 1, close - open - 1);
    if (head == "gl") {
        auto comma = args.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("gl needs (n,p)");
        return make_gl_module(std::stoi(args.substr(0, comma)), std::stol(args.substr(comma + 1)));
    }
    if (head == "sign") return make_sign_module(std::stol(args));
    if (head == "trivial") return make_trivial_E(parse_group_table(slurp(args)));
    if (head == "table") return parse_crossed_module_table(slurp(args));
    throw std::invalid_argument("unknown crossed-module spec: " + spec);
}

}  // namespace weldinv
