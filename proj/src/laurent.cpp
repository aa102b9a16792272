#include "weldinv/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace weldinv {

LaurentPoly LaurentPoly::constant(int n_vars, mpz_class c) {
    LaurentPoly p{n_vars, {}};
    if (c != 0) p.terms[std::vector<int>(n_vars, 0)] = std::move(c);
    return p;
}

LaurentPoly LaurentPoly::monomial(int n_vars, int var, int power, mpz_class c) {
    LaurentPoly p{n_vars, {}};
    if (c != 0) {
        std::vector<int> e(n_vars, 0);
        e.at(var) = power;
        p.terms[std::move(e)] = std::move(c);
    }
    return p;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p{n_vars, {}};
    for (const auto& [e, c] : terms) p.terms[e] = -c;
    return p;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly p = *this;
    for (const auto& [e, c] : o.terms) {
        mpz_class& t = p.terms[e];
        t += c;
        if (t == 0) p.terms.erase(e);
    }
    return p;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly p{n_vars, {}};
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            std::vector<int> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            mpz_class& t = p.terms[e];
            t += ca * cb;
            if (t == 0) p.terms.erase(e);
        }
    return p;
}

std::string LaurentPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        mpz_class a = c < 0 ? mpz_class(-c) : c;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        first = false;
        os << a.get_str();
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) {
                os << "*X" << i + 1;
                if (e[i] != 1) os << "^" << e[i];
            }
    }
    return os.str();
}

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return LaurentPoly::zero(a.n_vars);
    // Extreme degrees of a product add per variable, so every quotient term
    // must land in this box; stepping outside it proves the division inexact
    // (and bounds the loop, which would otherwise chase negative powers).
    int nv = a.n_vars;
    std::vector<int> lo(nv), hi(nv);
    for (int i = 0; i < nv; ++i) {
        auto ext = [&](const LaurentPoly& p) {
            int mn = p.terms.begin()->first[i], mx = mn;
            for (const auto& [e, c] : p.terms) {
                mn = std::min(mn, e[i]);
                mx = std::max(mx, e[i]);
            }
            return std::pair{mn, mx};
        };
        auto [amn, amx] = ext(a);
        auto [bmn, bmx] = ext(b);
        lo[i] = amn - bmn;
        hi[i] = amx - bmx;
        if (lo[i] > hi[i]) throw std::domain_error("inexact polynomial division");
    }
    LaurentPoly rem = a;
    LaurentPoly q = LaurentPoly::zero(a.n_vars);
    const auto& [eb, cb] = *b.terms.rbegin();  // lex-leading term of divisor
    while (!rem.is_zero()) {
        const std::vector<int> ea = rem.terms.rbegin()->first;
        const mpz_class ca = rem.terms.rbegin()->second;
        mpz_class qc = ca / cb;
        if (qc * cb != ca) throw std::domain_error("inexact polynomial division");
        std::vector<int> qe(ea.size());
        for (size_t i = 0; i < qe.size(); ++i) {
            qe[i] = ea[i] - eb[i];
            if (qe[i] < lo[i] || qe[i] > hi[i])
                throw std::domain_error("inexact polynomial division");
        }
        LaurentPoly t{a.n_vars, {{qe, qc}}};
        q = q + t;
        rem = rem - t * b;
        if (!rem.is_zero() && rem.terms.rbegin()->first >= ea)
            throw std::domain_error("inexact polynomial division");
    }
    return q;
}

LaurentPoly det_expansion(const std::vector<std::vector<LaurentPoly>>& m) {
    size_t n = m.size();
    if (n == 0) return LaurentPoly::constant(0, 1);
    int nv = m[0][0].n_vars;
    if (n == 1) return m[0][0];
    LaurentPoly det = LaurentPoly::zero(nv);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<LaurentPoly>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<LaurentPoly> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        LaurentPoly t = m[0][j] * det_expansion(minor);
        det = (j % 2 == 0) ? det + t : det - t;
    }
    return det;
}

LaurentPoly det_bareiss(const std::vector<std::vector<LaurentPoly>>& m) {
    size_t n = m.size();
    if (n == 0) return LaurentPoly::constant(0, 1);
    int nv = m[0][0].n_vars;
    std::vector<std::vector<LaurentPoly>> a = m;
    LaurentPoly prev = LaurentPoly::constant(nv, 1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t swap = k + 1;
            while (swap < n && a[swap][k].is_zero()) ++swap;
            if (swap == n) return LaurentPoly::zero(nv);
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    LaurentPoly det = a[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace weldinv
