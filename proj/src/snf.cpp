#include "weldinv/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace weldinv {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const mpz_class& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

namespace {

// Row/column elimination helpers recording the transforms.
void row_swap(IntMatrix& a, IntMatrix& u, int r1, int r2) {
    for (int j = 0; j < a.cols; ++j) std::swap(a.at(r1, j), a.at(r2, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(r1, j), u.at(r2, j));
}
void col_swap(IntMatrix& a, IntMatrix& v, int c1, int c2) {
    for (int i = 0; i < a.rows; ++i) std::swap(a.at(i, c1), a.at(i, c2));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, c1), v.at(i, c2));
}
void row_addmul(IntMatrix& a, IntMatrix& u, int dst, int src, const mpz_class& f) {
    if (f == 0) return;
    for (int j = 0; j < a.cols; ++j) a.at(dst, j) += f * a.at(src, j);
    for (int j = 0; j < u.cols; ++j) u.at(dst, j) += f * u.at(src, j);
}
void col_addmul(IntMatrix& a, IntMatrix& v, int dst, int src, const mpz_class& f) {
    if (f == 0) return;
    for (int i = 0; i < a.rows; ++i) a.at(i, dst) += f * a.at(i, src);
    for (int i = 0; i < v.rows; ++i) v.at(i, dst) += f * v.at(i, src);
}
void row_negate(IntMatrix& a, IntMatrix& u, int r) {
    for (int j = 0; j < a.cols; ++j) a.at(r, j) = -a.at(r, j);
    for (int j = 0; j < u.cols; ++j) u.at(r, j) = -u.at(r, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& input) {
    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(a.rows);
    IntMatrix v = IntMatrix::identity(a.cols);
    int n = std::min(a.rows, a.cols);

    for (int t = 0; t < n; ++t) {
        // Find a pivot: nonzero entry of minimal absolute value in the submatrix.
        int pr = -1, pc = -1;
        mpz_class best;
        for (int i = t; i < a.rows; ++i)
            for (int j = t; j < a.cols; ++j) {
                if (a.at(i, j) == 0) continue;
                mpz_class m = abs(a.at(i, j));
                if (pr < 0 || m < best) { best = m; pr = i; pc = j; }
            }
        if (pr < 0) break;  // submatrix is zero
        row_swap(a, u, t, pr);
        col_swap(a, v, t, pc);

        // Reduce row and column t until the pivot divides everything in them.
        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < a.rows; ++i) {
                if (a.at(i, t) == 0) continue;
                mpz_class q = a.at(i, t) / a.at(t, t);  // truncated division
                row_addmul(a, u, i, t, -q);
                if (a.at(i, t) != 0) {  // remainder smaller than pivot: swap up
                    row_swap(a, u, t, i);
                    again = true;
                }
            }
            for (int j = t + 1; j < a.cols; ++j) {
                if (a.at(t, j) == 0) continue;
                mpz_class q = a.at(t, j) / a.at(t, t);
                col_addmul(a, v, j, t, -q);
                if (a.at(t, j) != 0) {
                    col_swap(a, v, t, j);
                    again = true;
                }
            }
        }

        // Ensure the pivot divides all remaining entries (divisibility chain).
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < a.rows && clean; ++i)
                for (int j = t + 1; j < a.cols && clean; ++j) {
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        // Fold row i into row t and restart elimination of row/col t.
                        row_addmul(a, u, t, i, 1);
                        clean = false;
                    }
                }
            if (!clean) {
                bool again2 = true;
                while (again2) {
                    again2 = false;
                    for (int j = t + 1; j < a.cols; ++j) {
                        if (a.at(t, j) == 0) continue;
                        mpz_class q = a.at(t, j) / a.at(t, t);
                        col_addmul(a, v, j, t, -q);
                        if (a.at(t, j) != 0) { col_swap(a, v, t, j); again2 = true; }
                    }
                    for (int i = t + 1; i < a.rows; ++i) {
                        if (a.at(i, t) == 0) continue;
                        mpz_class q = a.at(i, t) / a.at(t, t);
                        row_addmul(a, u, i, t, -q);
                        if (a.at(i, t) != 0) { row_swap(a, u, t, i); again2 = true; }
                    }
                }
            }
        }
        if (a.at(t, t) < 0) row_negate(a, u, t);
    }

    SnfResult res;
    res.diagonal.resize(n);
    for (int t = 0; t < n; ++t) res.diagonal[t] = a.at(t, t);
    res.u = std::move(u);
    res.v = std::move(v);
    return res;
}

mpz_class count_solutions_mod(const IntMatrix& a, const std::vector<mpz_class>& b,
                              long m, int vars) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    if (a.cols > vars) throw std::invalid_argument("more columns than variables");
    mpz_class mod(m);
    if (m == 1) return 1;  // everything is 0 mod 1

    if (a.rows == 0 || a.cols == 0) {
        // No constraints on any variable (zero rows), or constraints 0 = b_i.
        for (const auto& bi : b)
            if (bi % mod != 0) return 0;
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), m, vars);
        return r;
    }

    SnfResult s = smith_normal_form(a);
    // A x = b  <=>  D y = U b with x = V y.
    std::vector<mpz_class> ub(a.rows, 0);
    if (!b.empty()) {
        if ((int)b.size() != a.rows) throw std::invalid_argument("rhs size mismatch");
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.rows; ++j) ub[i] += s.u.at(i, j) * b[j];
    }
    mpz_class count(1);
    int n = (int)s.diagonal.size();
    int free_vars = vars - a.cols;  // variables untouched by A
    for (int i = 0; i < n; ++i) {
        mpz_class d = s.diagonal[i] % mod;
        if (d < 0) d += mod;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        // d*y = c mod m has gcd(d,m) solutions when gcd(d,m) | c, else none.
        mpz_class c = ub[i] % mod;
        if (c % g != 0) return 0;
        count *= g;
    }
    for (int i = n; i < a.rows; ++i) {  // zero rows below the diagonal
        if (ub[i] % mod != 0) return 0;
    }
    if (a.cols > n) free_vars += a.cols - n;  // columns beyond rank block
    mpz_class tail;
    mpz_ui_pow_ui(tail.get_mpz_t(), m, free_vars);
    return count * tail;
}

}  // namespace weldinv
